use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env_config = std::env::var_os(unruh_probe_cli::CONFIG_ENV).map(Into::into);
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    let code = unruh_probe_cli::run(std::env::args_os(), env_config, &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code as u8)
}
