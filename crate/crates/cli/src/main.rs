use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let report = isoheight_cli::run(std::env::args_os());
    let text = report.render();
    if report.exit_status == 2 && report.message.is_none() && !report.json {
        let _ = std::io::stderr().write_all(text.as_bytes());
    } else {
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    ExitCode::from(report.exit_status as u8)
}
