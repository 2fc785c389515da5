#include "exemplar/trace.hpp"

#include <sstream>

namespace exemplar {

std::string print_trace(const std::vector<ProofStep>& steps, int indent) {
  std::ostringstream out;
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  for (const auto& s : steps) {
    out << pad << "[" << s.rule << "] " << s.conclusion;
    if (!s.note.empty()) out << "   ; " << s.note;
    out << "\n";
    for (const auto& p : s.premises) out << pad << "    <- " << p << "\n";
    if (!s.sub.empty()) out << print_trace(s.sub, indent + 1);
  }
  return out.str();
}

}  // namespace exemplar
