#include "szmk/app/commands.hpp"

int main(int argc, char** argv) { return szmk::app::run_cli(argc, argv); }
