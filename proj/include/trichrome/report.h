#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace trichrome::report {

inline constexpr const char *kHeader = "trichrome-report 1";

/// Ordered key-value report. Keys are non-empty and free of whitespace;
/// values are single-line. On disk:
///   trichrome-report 1
///   <key> <value>
class Report {
public:
	/// Replaces an existing key in place, else appends.
	void set(const std::string &key, const std::string &value);
	void set(const std::string &key, double value);
	void set(const std::string &key, long long value);
	void set(const std::string &key, unsigned long long value);
	void set(const std::string &key, int value) { set(key, static_cast<long long>(value)); }
	void set(const std::string &key, bool value) { set(key, std::string(value ? "true" : "false")); }

	std::optional<std::string> get(const std::string &key) const;
	/// Throws std::out_of_range for a missing key, std::invalid_argument for
	/// a value that is not a number.
	double number(const std::string &key) const;

	const std::vector<std::pair<std::string, std::string>> &entries() const { return entries_; }
	bool operator==(const Report &) const = default;

private:
	std::vector<std::pair<std::string, std::string>> entries_;
};

/// Shortest text that reads back to the same double ("%.17g" trimmed).
std::string format_number(double x);

void write(std::ostream &out, const Report &r);
std::string format(const Report &r);
/// Throws io::ParseError on a wrong header, duplicate key or bad line.
Report read(std::istream &in);
Report parse(const std::string &text);

} // namespace trichrome::report
