#include "gradecm/cli.hpp"

int main(int argc, char** argv) { return gradecm::cli_main(argc, argv); }
