#include "mtgb/cli.hpp"

int main(int argc, char** argv) { return mtgb::run_cli(argc, argv); }
