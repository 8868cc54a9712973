#include "concise/cli.hpp"

int main(int argc, char** argv) { return concise::cli_sigma2(argc, argv); }
