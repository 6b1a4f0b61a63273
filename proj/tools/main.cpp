#include "commands.hpp"

int main(int argc, char** argv) { return lawnsearch::cli::run_cli(argc, argv); }
