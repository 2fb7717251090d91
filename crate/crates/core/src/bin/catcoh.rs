fn main() {
    std::process::exit(catcoh::workbench::main_with_args(std::env::args_os()));
}
