#include "vixbond/cli.hpp"

int main(int argc, char** argv) { return vixbond::cli::run(argc, argv); }
