#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isoq::cli {

enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitValidation = 2, kExitCertificate = 3 };

// Relative change under node doubling above which a run reports a failed certificate.
inline constexpr double kCertificateTolerance = 1e-7;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isoq::cli
