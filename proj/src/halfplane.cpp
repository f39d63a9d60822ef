#include "cauchy/halfplane.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "cauchy/errors.hpp"

namespace cauchy {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

HalfPlaneParam::HalfPlaneParam(Complex value) : value_(value) {
  if (!is_finite(value) || !(value.imag() > 0.0)) {
    throw DomainError("half-plane parameter needs a finite value with Im > 0, got " +
                      format_complex(value));
  }
}

DiskParam::DiskParam(Complex value) : value_(value) {
  if (!is_finite(value) || !(std::abs(value) < 1.0)) {
    throw DomainError("disk parameter needs |w| < 1, got " + format_complex(value));
  }
}

Complex principal_log(Complex z) {
  if (z == Complex(0.0, 0.0)) throw DomainError("log of zero");
  double theta = std::atan2(z.imag(), z.real());
  if (z.imag() == 0.0 && z.real() < 0.0) theta = std::numbers::pi;
  return {std::log(std::abs(z)), theta};
}

Complex cpow(Complex z, Complex a) {
  if (z == Complex(0.0, 0.0)) return {0.0, 0.0};
  return std::exp(a * principal_log(z));
}

Complex mobius_to_disk(const HalfPlaneParam& gamma, Complex z) {
  if (z.imag() < 0.0) {
    throw DomainError("mobius_to_disk needs Im(z) >= 0, got " + format_complex(z));
  }
  const Complex g = gamma.value();
  return (z - g) / (z - std::conj(g));
}

Complex mobius_to_halfplane(const HalfPlaneParam& gamma, Complex w) {
  if (w == Complex(1.0, 0.0)) throw DomainError("pole of inverse map at w = 1");
  if (std::abs(w) > 1.0 + 1e-12) {
    throw DomainError("mobius_to_halfplane needs |w| <= 1, got " + format_complex(w));
  }
  const Complex g = gamma.value();
  return (g - std::conj(g) * w) / (1.0 - w);
}

double parse_real(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  if (body.empty() || body.front() == '+') {
    throw DomainError("malformed number '" + std::string(text) + "'");
  }
  double value = 0.0;
  const auto* end = body.data() + body.size();
  const auto [ptr, ec] = std::from_chars(body.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw DomainError("malformed number '" + std::string(text) + "'");
  }
  return value;
}

Complex parse_complex(std::string_view text) {
  // Whitespace is allowed at the ends and around the sign only.
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  std::string s;
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (!is_space(text[k])) {
      s.push_back(text[k]);
      continue;
    }
    std::size_t end = k;
    while (end < text.size() && is_space(text[end])) ++end;
    const bool at_edge = s.empty() || end == text.size();
    if (!at_edge && s.back() != '+' && s.back() != '-' && text[end] != '+' && text[end] != '-') {
      throw DomainError("malformed complex literal '" + std::string(text) + "'");
    }
    k = end - 1;
  }
  if (s.empty()) throw DomainError("empty complex literal");
  if (s.back() != 'i') return {parse_real(s), 0.0};

  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part);
  };
  try {
    if (split == std::string::npos) return {0.0, imag_part(body)};
    return {parse_real(body.substr(0, split)), imag_part(body.substr(split))};
  } catch (const DomainError&) {
    throw DomainError("malformed complex literal '" + std::string(text) + "'");
  }
}

std::string format_real(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string format_complex(Complex z) {
  std::string out = format_real(z.real());
  if (std::signbit(z.imag())) {
    out += "-" + format_real(-z.imag());
  } else {
    out += "+" + format_real(z.imag());
  }
  return out + "i";
}

}  // namespace cauchy
