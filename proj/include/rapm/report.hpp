#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "rapm/lambda.hpp"
#include "rapm/ridge.hpp"

namespace rapm {

// Ranked fixed-width table. Pooled player-season keys render as
// "player [season]".
void write_rapm_table_text(std::ostream& out, const RapmTable& table);

std::string rapm_table_json(const RapmTable& table);

void write_lambda_report_text(std::ostream& out, const LambdaReport& rep,
                              const CvResult* cv = nullptr);

std::string lambda_report_json(const LambdaReport& rep,
                               const CvResult* cv = nullptr);

}  // namespace rapm
