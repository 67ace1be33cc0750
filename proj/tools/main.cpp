#include "cli.hpp"

int main(int argc, char** argv) { return epibehave::cli::run_main(argc, argv); }
