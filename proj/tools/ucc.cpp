#include "ucc/cli.hpp"

int main(int argc, char** argv) { return ucc::cli::dispatch(argc, argv); }
