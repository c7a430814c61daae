fn main() {
    std::process::exit(ionic_neuron::cli::run(std::env::args().collect()));
}
