#include "sgw/cli.hpp"

int main(int argc, char** argv) { return sgw::run_cli(argc, argv); }
