#include "concise/cli.hpp"

int main(int argc, char** argv) { return concise::cli_unres(argc, argv); }
