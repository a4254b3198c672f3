#include "skell/cli.hpp"

int main(int argc, char** argv) { return skell::cli::run(argc, argv); }
