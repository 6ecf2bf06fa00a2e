#include "toric_limits/cli.hpp"

int main(int argc, char** argv) { return toric_limits::run_cli(argc, argv); }
