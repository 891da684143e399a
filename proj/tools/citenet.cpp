#include "citenet/cli.hpp"

int main(int argc, char** argv) { return citenet::cli::run(argc, argv); }
