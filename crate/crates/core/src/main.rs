fn main() {
    let code = nfabc::cli::dispatch(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
