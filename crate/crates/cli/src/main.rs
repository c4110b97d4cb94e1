use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match netfmt_cli::parse_args(std::env::args_os()) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let code = netfmt_cli::run(&cli, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}
