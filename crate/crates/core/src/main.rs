fn main() -> std::process::ExitCode {
    spinclone::cli::main()
}
