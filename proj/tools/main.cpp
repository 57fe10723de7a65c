#include "ctwist/cli.hpp"

int main(int argc, char** argv) { return ctwist::cli::run(argc, argv); }
