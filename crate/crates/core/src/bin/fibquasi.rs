fn main() -> std::process::ExitCode {
    fibquasi::cli::main()
}
