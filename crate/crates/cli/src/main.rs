fn main() {
    std::process::exit(flyspin::run(std::env::args_os()));
}
