#include "magnetic/cli.hpp"

int main(int argc, char** argv) { return magnetic::cli::main(argc, argv); }
