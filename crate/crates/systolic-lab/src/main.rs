use std::process::ExitCode;

fn main() -> ExitCode {
    systolic_lab::cli::run()
}
