use giantscope::error::CliError;

fn main() {
    let code = match giantscope::run(std::env::args_os()) {
        Ok(()) => 0,
        Err(err) => {
            match &err {
                CliError::Usage(clap_err) => {
                    // clap formats help/usage itself
                    let _ = clap_err.print();
                }
                other => eprintln!("giantscope: {other}"),
            }
            err.exit_code()
        }
    };
    std::process::exit(code);
}
