#include <iostream>

#include "qst/cli.hpp"

int main(int argc, char** argv) {
  qst::cli::init_threads_from_env();
  return qst::cli::run(argc, argv, std::cout, std::cerr);
}
