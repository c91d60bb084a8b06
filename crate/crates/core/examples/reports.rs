//! Produces report tables in-process, as the command-line tool does.

use ancestral::cli::{main_with_args, Cell, ReportRecord};

fn main() {
    // a hand-built table
    let mut r = ReportRecord::new("demo/1", &["n", "ratio"]).param("note", "hand built");
    r.command = "reports example".into();
    for n in 1..=3u32 {
        r.push(vec![Cell::from(n as usize), Cell::from(1.0 / n as f64)]);
    }
    print!("{}", r.to_csv());
    println!("{}", r.to_json());

    // the same entry point as the binary; output goes to stdout
    let code = main_with_args(["ancestral", "report", "--figure", "8"]);
    println!("exit code {code}");
}
