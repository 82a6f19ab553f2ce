fn main() -> std::process::ExitCode {
    brauer_y02::cli::run(std::env::args_os())
}
