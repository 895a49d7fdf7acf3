#include "reconf/cli.hpp"

int main(int argc, char **argv) { return reconf::cli_main(argc, argv); }
