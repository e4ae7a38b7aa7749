use std::io::{self, Write};

fn main() {
    let budget = std::env::var(qll::cli::BUDGET_ENV).ok();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = qll::cli::run(
        std::env::args_os(),
        budget.as_deref(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    );
    let _ = io::stdout().flush();
    std::process::exit(code);
}
