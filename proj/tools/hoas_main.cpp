#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "hoas/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = hoas::cli::run(args, [] {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  });
  std::cout << result.out << std::flush;
  std::cerr << result.err << std::flush;
  return result.exit_code;
}
