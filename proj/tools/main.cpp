#include "cumica/cli.hpp"

int main(int argc, char** argv) { return cumica::cli::run(argc, argv); }
