use std::io;

fn main() {
    let code =
        lissajous_braids::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
