#include "centra/cli.hpp"

int main(int argc, char** argv) { return centra::run_cli(argc, argv); }
