fn main() {
    std::process::exit(i32::from(borosmoll_cli::run(std::env::args_os())));
}
