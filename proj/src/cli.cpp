#include "tauspec/cli.hpp"
namespace tauspec::cli {
int run(const std::vector<std::string>&, std::string& out) { out = "{}"; return 0; }
}
