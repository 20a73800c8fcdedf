#include <csignal>
#include <iostream>

#include "cli.hpp"
#include "toreq/parallel.hpp"

namespace {

extern "C" void on_sigint(int) { toreq::cancel_flag().store(true); }

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_sigint);
  return toreq::cli::run_cli(argc, argv, std::cout, std::cerr);
}
