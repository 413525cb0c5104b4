#include "polyspec/cli.hpp"

int main(int argc, char** argv) { return polyspec::cli::run(argc, argv); }
