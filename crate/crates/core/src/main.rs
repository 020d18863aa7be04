fn main() {
    let out = trivhom::cli::run(std::env::args_os());
    print!("{}", out.report);
    std::process::exit(out.code);
}
