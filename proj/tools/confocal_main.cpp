#include "confocal/cli.hpp"

int main(int argc, char** argv) { return confocal::run_cli(argc, argv); }
