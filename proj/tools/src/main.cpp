#include "mipdoor_cli/cli.hpp"

int main(int argc, char** argv) { return mipdoor::cli::run_cli(argc, argv); }
