mod args;
mod run;

use std::io::Write;

fn main() {
    let outcome = run::run(std::env::args_os());
    // A closed reader (e.g. piping into `head`) must not turn into a panic.
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", outcome.body);
    let _ = out.flush();
    std::process::exit(outcome.code);
}
