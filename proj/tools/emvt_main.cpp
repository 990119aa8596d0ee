#include "emvt/cli.hpp"

int main(int argc, char** argv) { return emvt::cli::run(argc, argv); }
