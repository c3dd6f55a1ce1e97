// tcw — theory-combination workbench
#include "tcw/cli.hpp"

int main(int argc, char** argv) { return tcw::run_command(argc, argv); }
