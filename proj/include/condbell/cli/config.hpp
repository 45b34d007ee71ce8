#pragma once

#include <optional>
#include <string>

#include "condbell/errors.hpp"
#include "condbell/prob_space.hpp"
#include "condbell/quantum.hpp"

namespace condbell::cli {

/// Malformed document: JSON syntax, missing keys, wrong types. Carries a
/// "source:line:column" or field-path location in the message.
class ConfigParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed document whose values violate a distribution invariant.
class ConfigValidationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// A fully validated experiment description.
///
/// JSON layout:
///   {
///     "settings": {"uniform": true}
///               | {"weights": [[w11, w12], [w21, w22]]}
///               | {"product": {"a1": p(a=1), "b1": p(b=1)}},
///     "table":  {"11": [q++, q+-, q-+, q--], "12": [...], "21": [...], "22": [...]}
///   | "angles": {"a": [t1, t2], "b": [t1', t2'], "unit": "deg" | "rad",
///                "convention": "photon" | "spin"},
///     "tolerance": 1e-9            (optional)
///   }
/// Exactly one of "table" and "angles" is required.
struct Config {
    SettingDistribution settings;
    ConditionalTable table;
    std::optional<AngleSettings> angles;
    Convention convention = Convention::Photon;
    double tolerance = kDefaultTolerance;
    std::string source;

    SampleSpace space() const { return buildSpace(settings, table); }
};

/// `toleranceOverride` replaces the document's tolerance (and is used to
/// validate the distributions) when set.
Config parseConfig(const std::string& text, const std::string& source = "<config>",
                   std::optional<double> toleranceOverride = std::nullopt);

/// Throws IoError if the file cannot be read.
Config loadConfig(const std::string& path, std::optional<double> toleranceOverride = std::nullopt);

}  // namespace condbell::cli
