use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::record::{Cell, ReportRecord};
use super::{CliError, Command, ConfigsArgs, SystemArg};
use crate::combinat::{catalan, factorial, labeled_topology_count};
use crate::configs::{
    config_counts, node_configs, oracle_configurations, realization_configurations,
    ANTICHAIN_ORACLE_CAP, REALIZATION_ORACLE_CAP,
};
use crate::error::Result;
use crate::moments::{exact_moments, float_moments, ln_biguint, Statistic, EXACT_CAP};
use crate::newick::{parse_auto, AnyTree};
use crate::series::{
    family_series, gf_uniform, gf_yule_r, verify_functional_systems, yule_expectation_series,
    UniformGf, SYSTEM_CHECK_CAP,
};
use crate::stats::{
    exact_distribution, extremal_shapes, grid, monte_carlo_log_moments, normal_cdf,
    standardized_log_cdf,
};
use crate::tree::{enumerate_shapes, node_table, BinaryTree, NodeRef};
use crate::weights::{induced_distribution_via, yule_prob, ModelId, Route, ShapeWeights};

/// Runs one subcommand and returns its table.
pub fn run_command(command: &Command) -> std::result::Result<ReportRecord, CliError> {
    Ok(match command {
        Command::Shapes { n, list } => shapes(*n, *list)?,
        Command::Configs(args) => configs(args)?,
        Command::Weights { n, model } => weights(*n, (*model).into())?,
        Command::Moments {
            model,
            n_max,
            float,
            ..
        } => moments((*model).into(), *n_max, *float)?,
        Command::SeriesCheck { which, order } => series_check(*which, *order)?,
        Command::Distribution { n, model, cdf_grid } => match cdf_grid {
            None => distribution(*n, (*model).into())?,
            Some(text) => cdf(*n, (*model).into(), &parse_grid(text)?)?,
        },
        Command::Extremal { n } => extremal(*n)?,
        Command::Sample {
            n,
            model,
            samples,
            seed,
            per_sample,
        } => sample(*n, (*model).into(), *samples, *seed, *per_sample)?,
        Command::Report { figure } => report(*figure)?,
    })
}

fn parse_grid(text: &str) -> std::result::Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let values: Option<Vec<f64>> = parts.iter().map(|p| p.trim().parse().ok()).collect();
    match values.as_deref() {
        Some(&[a, b, step]) => Ok(grid(a, b, step)?),
        _ => Err(CliError::usage(format!(
            "invalid grid `{text}`: expected a:b:step"
        ))),
    }
}

fn shapes(n: usize, list: bool) -> Result<ReportRecord> {
    let all = enumerate_shapes(n)?;
    if list {
        let mut r = ReportRecord::new("shape-list/1", &["index", "shape"]).param("n", n);
        for (i, s) in all.iter().enumerate() {
            r.push(vec![i.into(), s.to_string().into()]);
        }
        return Ok(r);
    }
    let mut r = ReportRecord::new(
        "shape-counts/1",
        &[
            "n",
            "shapes",
            "ordered_shapes",
            "histories",
            "labeled_topologies",
        ],
    );
    r.push(vec![
        n.into(),
        all.len().into(),
        catalan(n - 1).into(),
        factorial(n - 1).into(),
        labeled_topology_count(n).into(),
    ]);
    Ok(r)
}

fn read_trees(args: &ConfigsArgs) -> std::result::Result<Vec<AnyTree>, CliError> {
    let lines: Vec<String> = match (&args.tree, &args.file) {
        (Some(t), _) => vec![t.clone()],
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(String::from)
            .collect(),
        (None, None) => return Err(CliError::usage("give --tree or --file")),
    };
    lines
        .iter()
        .enumerate()
        .map(|(i, l)| parse_auto(l).map_err(|e| CliError::data(format!("tree {}: {e}", i + 1))))
        .collect()
}

/// Whether both oracles reproduce the recurrence at every node.
fn oracle_check<T: BinaryTree>(tree: &T) -> Result<Vec<(usize, bool)>> {
    let counts = node_configs(tree);
    let by_realization = if tree.leaf_count() <= REALIZATION_ORACLE_CAP {
        Some(realization_configurations(tree)?)
    } else {
        None
    };
    counts
        .iter()
        .map(|(k, c)| {
            let sets = oracle_configurations(tree, k)?;
            let realized = by_realization.as_ref().is_none_or(|r| r[k.0] == sets);
            Ok((sets.len(), BigUint::from(sets.len()) == *c && realized))
        })
        .collect()
}

fn node_labels(tree: &AnyTree) -> Vec<String> {
    fn walk(t: &crate::tree::LabeledTopology, out: &mut Vec<String>) {
        match t.children() {
            None => out.push(t.label().unwrap_or_default().to_string()),
            Some((l, r)) => {
                out.push(String::new());
                walk(l, out);
                walk(r, out);
            }
        }
    }
    match tree {
        AnyTree::Labeled(t) => {
            let mut out = Vec::new();
            walk(t, &mut out);
            out
        }
        AnyTree::History(h) => h
            .ranks()
            .iter()
            .map(|&r| {
                if r > 0 {
                    format!("rank {r}")
                } else {
                    String::new()
                }
            })
            .collect(),
        _ => Vec::new(),
    }
}

fn with_tree<R>(tree: &AnyTree, f: impl FnOnce(&dyn TreeView) -> R) -> R {
    match tree {
        AnyTree::Labeled(t) => f(t),
        AnyTree::Shape(t) => f(t),
        AnyTree::Ordered(t) => f(t),
        AnyTree::History(h) => f(h.ordered()),
    }
}

/// Object-safe bundle of the per-tree computations used here.
trait TreeView {
    fn leaves(&self) -> usize;
    fn counts(&self) -> (BigUint, BigUint);
    fn per_node(&self) -> Vec<(BigUint, usize)>;
    fn oracle(&self) -> Result<Vec<(usize, bool)>>;
}

impl<T: BinaryTree> TreeView for T {
    fn leaves(&self) -> usize {
        self.leaf_count()
    }

    fn counts(&self) -> (BigUint, BigUint) {
        let c = config_counts(self);
        (c.root, c.total)
    }

    fn per_node(&self) -> Vec<(BigUint, usize)> {
        let table = node_table(self);
        node_configs(self)
            .iter()
            .map(|(k, c)| (c.clone(), table[k.0].leaves))
            .collect()
    }

    fn oracle(&self) -> Result<Vec<(usize, bool)>> {
        oracle_check(self)
    }
}

fn configs(args: &ConfigsArgs) -> std::result::Result<ReportRecord, CliError> {
    let trees = read_trees(args)?;
    if args.oracle {
        for t in &trees {
            crate::error::check_cap("oracle tree leaves", t.shape().size(), ANTICHAIN_ORACLE_CAP)?;
        }
    }
    if args.per_node {
        let mut cols = vec!["tree", "node", "label", "leaves", "configs"];
        if args.oracle {
            cols.extend(["oracle_configs", "oracle_match"]);
        }
        let mut r = ReportRecord::new("configs-per-node/1", &cols);
        for (i, t) in trees.iter().enumerate() {
            let labels = node_labels(t);
            let (rows, oracle) = with_tree(t, |v| (v.per_node(), args.oracle.then(|| v.oracle())));
            let oracle = oracle.transpose()?;
            for (k, (c, leaves)) in rows.into_iter().enumerate() {
                let mut row: Vec<Cell> = vec![
                    (i + 1).into(),
                    NodeRef(k).to_string().into(),
                    labels.get(k).cloned().unwrap_or_default().into(),
                    leaves.into(),
                    c.into(),
                ];
                if let Some(o) = &oracle {
                    row.push(o[k].0.into());
                    row.push(o[k].1.into());
                }
                r.push(row);
            }
        }
        return Ok(r);
    }
    let mut cols = vec!["tree", "newick", "leaves", "root", "total"];
    if args.oracle {
        cols.push("oracle_match");
    }
    let mut r = ReportRecord::new("configs/1", &cols);
    for (i, t) in trees.iter().enumerate() {
        let (leaves, (root, total), oracle) = with_tree(t, |v| {
            (v.leaves(), v.counts(), args.oracle.then(|| v.oracle()))
        });
        let mut row: Vec<Cell> = vec![
            (i + 1).into(),
            t.to_string().into(),
            leaves.into(),
            root.into(),
            total.into(),
        ];
        if let Some(o) = oracle {
            row.push(o?.iter().all(|x| x.1).into());
        }
        r.push(row);
    }
    Ok(r)
}

fn weights(n: usize, model: ModelId) -> Result<ReportRecord> {
    let ordered = induced_distribution_via(n, model, Route::Ordered)?;
    let labeled = induced_distribution_via(n, model, Route::Labeled)?;
    let mut r = ReportRecord::new(
        "weights/1",
        &[
            "index",
            "shape",
            "lab",
            "out",
            "ouh",
            "p_labeling",
            "p_induced",
            "p_induced_labeled_route",
            "routes_agree",
        ],
    )
    .param("n", n)
    .param("model", model);
    for (i, ((shape, p), (_, q))) in ordered.iter().zip(&labeled).enumerate() {
        let w = ShapeWeights::of(shape);
        let p_labeling = match model {
            ModelId::Uniform => w.p_uniform.clone(),
            ModelId::Yule => yule_prob(shape),
        };
        r.push(vec![
            i.into(),
            shape.to_string().into(),
            w.lab.into(),
            w.out.into(),
            w.ouh.into(),
            p_labeling.into(),
            p.into(),
            q.into(),
            (p == q).into(),
        ]);
    }
    Ok(r)
}

const MOMENT_COLUMNS: [Statistic; 8] = [
    Statistic::R,
    Statistic::T,
    Statistic::R2,
    Statistic::TR,
    Statistic::T2,
    Statistic::VarR,
    Statistic::VarT,
    Statistic::CovTR,
];

fn moments(model: ModelId, n_max: usize, float: bool) -> Result<ReportRecord> {
    if float {
        let table = float_moments(model, n_max)?;
        let mut cols: Vec<String> = vec!["n".into()];
        cols.extend(MOMENT_COLUMNS.iter().map(|s| format!("ln_{}", s.name())));
        cols.extend(["rho_tr".into(), "ratio_t_r".into()]);
        let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
        let mut r = ReportRecord::new("moments-float/1", &col_refs)
            .param("model", model)
            .param("mode", "float");
        for row in &table.rows {
            let mut cells: Vec<Cell> = vec![row.n.into()];
            cells.extend(MOMENT_COLUMNS.iter().map(|&s| {
                // negative covariances have no log
                let v = table.ln_value(row.n, s);
                if v.is_nan() {
                    Cell::Empty
                } else {
                    Cell::from(v)
                }
            }));
            cells.push(row.rho_tr.into());
            cells.push(if row.e_r > 0.0 {
                Cell::from(row.e_t / row.e_r)
            } else {
                Cell::Empty
            });
            r.push(cells);
        }
        return Ok(r);
    }
    let table = exact_moments(model, n_max)?;
    let mut cols: Vec<&str> = vec!["n"];
    cols.extend(MOMENT_COLUMNS.iter().map(|s| s.name()));
    cols.extend(["rho_tr", "ratio_t_r"]);
    let mut r = ReportRecord::new("moments-exact/1", &cols)
        .param("model", model)
        .param("mode", "exact");
    for row in &table.rows {
        let mut cells: Vec<Cell> = vec![row.n.into()];
        cells.extend(MOMENT_COLUMNS.iter().map(|&s| Cell::from(row.get(s))));
        cells.push(row.rho_tr.into());
        cells.push(ratio_cell(&row.e_t, &row.e_r));
        r.push(cells);
    }
    Ok(r)
}

fn ratio_cell(a: &BigRational, b: &BigRational) -> Cell {
    if b == &BigRational::default() {
        Cell::Empty
    } else {
        (a / b).to_f64().into()
    }
}

fn series_check(which: SystemArg, order: usize) -> Result<ReportRecord> {
    if which == SystemArg::Coeffs {
        return coefficient_check(order);
    }
    let system = match which {
        SystemArg::S1 => "S1",
        SystemArg::S2 => "S2",
        _ => "S3",
    };
    let mut r = ReportRecord::new(
        "series-check/1",
        &[
            "system",
            "equation",
            "order",
            "holds",
            "violations",
            "max_violation",
        ],
    )
    .param("order", order);
    for check in verify_functional_systems(order)?
        .into_iter()
        .filter(|c| c.system == system)
    {
        r.push(vec![
            check.system.into(),
            check.equation.into(),
            check.order.into(),
            check.holds().into(),
            check.violations.len().into(),
            check.max_violation().map_or(Cell::Empty, Cell::from),
        ]);
    }
    Ok(r)
}

fn coefficient_check(order: usize) -> Result<ReportRecord> {
    crate::error::check_cap("coefficient check order", order, SYSTEM_CHECK_CAP)?;
    let mut r = ReportRecord::new(
        "series-coeffs/1",
        &[
            "model",
            "statistic",
            "n",
            "closed_form",
            "recurrence",
            "equal",
        ],
    )
    .param("order", order);
    for which in UniformGf::ALL {
        let closed = gf_uniform(which, order)?;
        let rec = family_series(ModelId::Uniform, which.statistic(), order)?;
        for n in 1..=order {
            r.push(vec![
                "uniform".into(),
                which.statistic().name().into(),
                n.into(),
                closed.coeff(n).into(),
                rec.coeff(n).into(),
                (closed.coeff(n) == rec.coeff(n)).into(),
            ]);
        }
    }
    let closed = gf_yule_r(order)?;
    let rec = yule_expectation_series(Statistic::R, order)?;
    for n in 1..=order {
        let c = closed.coeff(n);
        r.push(vec![
            "yule".into(),
            Statistic::R.name().into(),
            n.into(),
            if c.is_rational() {
                Cell::from(&c.a)
            } else {
                Cell::from(c.to_string())
            },
            rec.coeff(n).into(),
            (c.is_rational() && &c.a == rec.coeff(n)).into(),
        ]);
    }
    Ok(r)
}

fn distribution(n: usize, model: ModelId) -> Result<ReportRecord> {
    let dist = exact_distribution(n, model)?;
    let mut r = ReportRecord::new(
        "distribution/1",
        &[
            "index",
            "shape",
            "total",
            "root",
            "probability",
            "ln_total",
            "ln_root",
        ],
    )
    .param("n", n)
    .param("model", model);
    for (i, e) in dist.entries.iter().enumerate() {
        r.push(vec![
            i.into(),
            e.shape.to_string().into(),
            (&e.total).into(),
            (&e.root).into(),
            (&e.probability).into(),
            e.ln_total().into(),
            e.ln_root().into(),
        ]);
    }
    Ok(r)
}

fn cdf(n: usize, model: ModelId, points: &[f64]) -> Result<ReportRecord> {
    let dist = exact_distribution(n, model)?;
    let values = standardized_log_cdf(&dist, points)?;
    let (mu, var) = dist.log_total_moments();
    let mut r = ReportRecord::new("log-cdf/1", &["y", "cdf", "normal_cdf", "deviation"])
        .param("n", n)
        .param("model", model)
        .param("mean_ln_total", super::format_float(mu))
        .param("var_ln_total", super::format_float(var));
    for (y, f) in values {
        let phi = normal_cdf(y);
        r.push(vec![y.into(), f.into(), phi.into(), (f - phi).into()]);
    }
    Ok(r)
}

fn extremal(n: usize) -> Result<ReportRecord> {
    let rep = extremal_shapes(n)?;
    let mut r = ReportRecord::new(
        "extremal/1",
        &["maximizes", "shape", "root", "total", "ln_root", "ln_total"],
    )
    .param("n", n);
    for (shape, total) in &rep.root_maximizers {
        r.push(vec![
            "root".into(),
            shape.to_string().into(),
            (&rep.max_root).into(),
            total.into(),
            ln_biguint(&rep.max_root).into(),
            ln_biguint(total).into(),
        ]);
    }
    for (shape, root) in &rep.total_maximizers {
        r.push(vec![
            "total".into(),
            shape.to_string().into(),
            root.into(),
            (&rep.max_total).into(),
            ln_biguint(root).into(),
            ln_biguint(&rep.max_total).into(),
        ]);
    }
    Ok(r)
}

fn sample(
    n: usize,
    model: ModelId,
    samples: usize,
    seed: u64,
    per_sample: bool,
) -> Result<ReportRecord> {
    let run = monte_carlo_log_moments(n, model, samples, seed)?;
    let mut r = if per_sample {
        let mut r = ReportRecord::new("samples/1", &["sample", "ln_total", "ln_root"]);
        for (i, (t, root)) in run.log_t.iter().zip(&run.log_r).enumerate() {
            r.push(vec![i.into(), (*t).into(), (*root).into()]);
        }
        r
    } else {
        let mut r = ReportRecord::new(
            "sample-summary/1",
            &[
                "n",
                "model",
                "samples",
                "mean_ln_total_per_n",
                "se_mean",
                "var_ln_total_per_n",
                "se_var",
            ],
        );
        r.push(vec![
            n.into(),
            model.name().into(),
            samples.into(),
            run.mean_log_t_per_n.into(),
            run.se_mean_per_n.into(),
            run.var_log_t_per_n.into(),
            run.se_var_per_n.into(),
        ]);
        r
    };
    r.seed = Some(seed);
    Ok(r.param("generator", run.generator).param("model", model))
}

/// Size used by the shape-level figures.
pub const FIGURE_SIZE: usize = 15;

fn report(figure: u8) -> std::result::Result<ReportRecord, CliError> {
    Ok(match figure {
        2 => {
            let dist = exact_distribution(FIGURE_SIZE, ModelId::Uniform)?;
            let mut r = ReportRecord::new(
                "figure-2/1",
                &["index", "shape", "root", "total", "ln_root", "ln_total"],
            )
            .param("n", FIGURE_SIZE);
            for (i, e) in dist.entries.iter().enumerate() {
                r.push(vec![
                    i.into(),
                    e.shape.to_string().into(),
                    (&e.root).into(),
                    (&e.total).into(),
                    e.ln_root().into(),
                    e.ln_total().into(),
                ]);
            }
            r
        }
        3 | 4 => {
            let model = if figure == 3 {
                ModelId::Uniform
            } else {
                ModelId::Yule
            };
            let n_max = 100.min(EXACT_CAP);
            let table = exact_moments(model, n_max)?;
            let mut r = ReportRecord::new(
                &format!("figure-{figure}/1"),
                &["n", "e_t", "e_r", "ratio_t_r"],
            )
            .param("model", model);
            for row in table.rows.iter().skip(1) {
                r.push(vec![
                    row.n.into(),
                    row.e_t.to_f64().into(),
                    row.e_r.to_f64().into(),
                    ratio_cell(&row.e_t, &row.e_r),
                ]);
            }
            r
        }
        5 | 6 => {
            let model = if figure == 5 {
                ModelId::Uniform
            } else {
                ModelId::Yule
            };
            let mut r = cdf(FIGURE_SIZE, model, &grid(-3.0, 3.0, 0.1)?)?;
            r.schema = format!("figure-{figure}/1");
            r
        }
        7 => {
            let mut r = extremal(FIGURE_SIZE)?;
            r.schema = "figure-7/1".into();
            r
        }
        8 => {
            let uniform = exact_moments(ModelId::Uniform, 20)?;
            let yule = exact_moments(ModelId::Yule, 20)?;
            let mut r = ReportRecord::new(
                "figure-8/1",
                &[
                    "n",
                    "e_t_uniform",
                    "e_t_yule",
                    "e_t_uniform_exact",
                    "e_t_yule_exact",
                    "yule_exceeds",
                ],
            );
            for (u, y) in uniform.rows.iter().zip(&yule.rows) {
                r.push(vec![
                    u.n.into(),
                    u.e_t.to_f64().into(),
                    y.e_t.to_f64().into(),
                    (&u.e_t).into(),
                    (&y.e_t).into(),
                    (y.e_t > u.e_t).into(),
                ]);
            }
            r
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown figure {other}; expected 2 to 8"
            )))
        }
    })
}
