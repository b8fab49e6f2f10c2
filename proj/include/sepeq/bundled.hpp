// The bundled example workspaces, buildable in memory so that tests and the
// fixture generator agree byte for byte with the files shipped in fixtures/.

#pragma once

#include "sepeq/fixtures.hpp"
#include "sepeq/workspace.hpp"

namespace sepeq {

/// Keys: qc2, f2c2, m2, sweedler, kx2, trivext.
WorkspaceFile bundled_workspace(const std::string& key);

/// All bundled keys, in a fixed order.
const std::vector<std::string>& bundled_workspace_keys();

}  // namespace sepeq
