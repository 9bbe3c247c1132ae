use std::process::ExitCode;

fn main() -> ExitCode {
    let config = match glyphplot::parse_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            if e.exit_code == 0 {
                print!("{}", e.message);
            } else {
                eprint!("{}", e.message);
            }
            return ExitCode::from(e.exit_code as u8);
        }
    };
    let code = glyphplot::run(&config, &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
