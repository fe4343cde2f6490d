#include "azhm/cli.hpp"

int main(int argc, char** argv) { return azhm::cli::run(argc, argv); }
