#include "hybridhopf/cli.hpp"

int main(int argc, char** argv) { return hybridhopf::cli_main(argc, argv); }
