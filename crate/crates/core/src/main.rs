fn main() {
    let (code, out) = nccalc::cli::run(std::env::args_os());
    if code == 2 {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
