#include "ocsyn/cli.hpp"

int main(int argc, char** argv) { return ocsyn::run_cli(argc, argv); }
