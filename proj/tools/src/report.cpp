#include "maxent_cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace maxent::cli {

namespace {

std::string render(double mantissa, long long exponent) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5fe%lld", mantissa, exponent);
  return buf;
}

}  // namespace

std::string scientific_from_log(double log_value) {
  if (std::isnan(log_value)) return "nan";
  if (std::isinf(log_value)) return log_value > 0 ? "inf" : "0";
  const double l10 = log_value / std::numbers::ln10;
  auto exponent = static_cast<long long>(std::floor(l10));
  double mantissa = std::pow(10.0, l10 - static_cast<double>(exponent));
  // printf rounding may carry into a seventh digit
  if (mantissa >= 9.999995) {
    mantissa /= 10.0;
    ++exponent;
  }
  return render(mantissa, exponent);
}

std::string scientific_from_integer(const BigInt& value) {
  if (value == 0) return render(0.0, 0);
  std::string digits = (value < 0 ? BigInt(-value) : value).str();
  const std::string sign = value < 0 ? "-" : "";
  auto exponent = static_cast<long long>(digits.size()) - 1;
  if (digits.size() > 6) {
    BigInt head(digits.substr(0, 6));
    if (digits[6] >= '5') head += 1;
    digits = head.str();
    if (digits.size() > 6) {
      ++exponent;
      digits.pop_back();
    }
  }
  digits.resize(6, '0');
  return sign + digits.substr(0, 1) + "." + digits.substr(1) + "e" + std::to_string(exponent);
}

}  // namespace maxent::cli
