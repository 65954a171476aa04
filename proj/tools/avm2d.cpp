#include <iostream>
#include <string>
#include <vector>

#include "avm/config.hpp"
#include "avm/errors.hpp"
#include "avm/problems.hpp"
#include "avm/runner.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  for (const auto& a : args) {
    if (a == "--help" || a == "-h") {
      std::cout << avm::config_usage();
      return 0;
    }
    if (a == "--list-problems") {
      for (const auto& p : avm::problems::all_problems())
        std::cout << p.name << "  " << (p.magnetic ? "mhd" : "euler") << "  " << p.domain.nx << "x"
                  << p.domain.ny << "  t=" << p.t_final << "\n";
      return 0;
    }
  }
  try {
    const auto config = avm::parse_config(args);
    avm::run_from_config(config, std::cout);
  } catch (const avm::FailedStep& e) {
    std::cerr << "avm2d: physics error: " << e.what() << "\n";
    return static_cast<int>(e.category());
  } catch (const avm::Error& e) {
    std::cerr << "avm2d: error: " << e.what() << "\n";
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    std::cerr << "avm2d: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
