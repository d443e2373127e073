fn main() {
    std::process::exit(otp_lab::cli::main_with_args(std::env::args_os()));
}
