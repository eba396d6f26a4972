#include "branchcov/cli.hpp"

int main(int argc, char **argv) { return branchcov::cli::main(argc, argv); }
