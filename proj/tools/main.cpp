#include "ramsauer/cli.hpp"

int main(int argc, char** argv) { return ramsauer::run_cli(argc, argv); }
