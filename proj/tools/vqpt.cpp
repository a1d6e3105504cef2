#include <string>
#include <vector>

#include "vqpt/cli.hpp"

int main(int argc, char** argv)
{
  return vqpt::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
