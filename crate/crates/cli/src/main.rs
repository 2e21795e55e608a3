fn main() -> std::process::ExitCode {
    bracketopt_cli::main_entry()
}
