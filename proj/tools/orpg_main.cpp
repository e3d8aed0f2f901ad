#include "orpg/cli.hpp"

int main(int argc, char** argv) { return orpg::cli_main(argc, argv); }
