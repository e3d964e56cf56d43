#include "cli.hpp"

int main(int argc, char** argv) { return teamdyn::cli::main(argc, argv); }
