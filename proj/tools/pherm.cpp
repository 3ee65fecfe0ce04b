#include "pherm/cli/app.hpp"

int main(int argc, char** argv) { return pherm::cli::run(argc, argv); }
