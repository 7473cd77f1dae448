fn main() {
    sigforge::cli::configure_threads();
    let code = sigforge::cli::execute(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
