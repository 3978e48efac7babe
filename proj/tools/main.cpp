#include "cdt/cli.hpp"

int main(int argc, char** argv) { return cdt::run_cli(argc, argv); }
