#include "freeplane/cli.hpp"

int main(int argc, char** argv) { return freeplane::cli::run(argc, argv); }
