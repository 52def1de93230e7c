#pragma once

#include <string>
#include <vector>

namespace qhl::verify {

struct VerifyItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  bool pass = false;
  std::vector<VerifyItem> items;
};

/// The full reference suite behind `verify-paper`: inverse matrix,
/// Christoffel table, curvature table, the six component-equation
/// proportionalities, the exhibited Killing fields, the four case reports
/// and the surface-geometry facts. Deterministic; a correct build passes
/// every item.
VerifyReport run_suite();

}  // namespace qhl::verify
