#include "zladder/cli.hpp"

int main(int argc, char** argv) { return zladder::cli::run(argc, argv); }
