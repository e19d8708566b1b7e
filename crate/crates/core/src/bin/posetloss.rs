fn main() {
    std::process::exit(posetloss::cli::main_from_args(std::env::args_os()));
}
