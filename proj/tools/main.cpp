#include "qga_cli/cli.hpp"

int main(int argc, char** argv) { return qga::cli::main_entry(argc, argv); }
