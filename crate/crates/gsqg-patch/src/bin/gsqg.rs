fn main() {
    std::process::exit(gsqg_patch::cli::run(std::env::args_os()));
}
