#include "rlab/cli.hpp"

int main(int argc, char** argv) { return rlab::cli_main(argc, argv); }
