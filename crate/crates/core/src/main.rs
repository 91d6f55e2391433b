fn main() {
    let outcome = reslat::cli::run(std::env::args_os());
    print!("{}", outcome.stdout);
    std::process::exit(outcome.code);
}
