fn main() {
    std::process::exit(logdisc_cli::dispatch(std::env::args_os()));
}
