fn main() -> std::process::ExitCode {
    ultrametrica::cli::run(std::env::args_os())
}
