#include "rings/cli.hpp"

int main(int argc, char** argv) { return rings::run_cli(argc, argv); }
