#include "cli.hpp"

int main(int argc, char** argv) { return normtrace::cli::run(argc, argv); }
