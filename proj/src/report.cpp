#include "trichrome/report.h"

#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "trichrome/formats.h"

namespace trichrome::report {

namespace {

bool valid_key(const std::string &k) {
	if (k.empty()) return false;
	for (char c : k)
		if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
	return true;
}

} // namespace

std::string format_number(double x) {
	char buf[64];
	auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
	if (ec != std::errc()) throw std::runtime_error("number formatting failed");
	return std::string(buf, p);
}

void Report::set(const std::string &key, const std::string &value) {
	if (!valid_key(key)) throw std::invalid_argument("bad report key '" + key + "'");
	if (value.find_first_of("\n\r") != std::string::npos) throw std::invalid_argument("multi-line report value");
	for (auto &[k, v] : entries_)
		if (k == key) {
			v = value;
			return;
		}
	entries_.emplace_back(key, value);
}

void Report::set(const std::string &key, double value) { set(key, format_number(value)); }
void Report::set(const std::string &key, long long value) { set(key, std::to_string(value)); }
void Report::set(const std::string &key, unsigned long long value) { set(key, std::to_string(value)); }

std::optional<std::string> Report::get(const std::string &key) const {
	for (const auto &[k, v] : entries_)
		if (k == key) return v;
	return std::nullopt;
}

double Report::number(const std::string &key) const {
	auto v = get(key);
	if (!v) throw std::out_of_range("report has no key '" + key + "'");
	double x = 0;
	auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
	if (ec != std::errc() || p != v->data() + v->size())
		throw std::invalid_argument("report value for '" + key + "' is not a number");
	return x;
}

void write(std::ostream &out, const Report &r) {
	out << kHeader << '\n';
	for (const auto &[k, v] : r.entries()) out << k << ' ' << v << '\n';
}

std::string format(const Report &r) {
	std::ostringstream out;
	write(out, r);
	return out.str();
}

Report read(std::istream &in) {
	std::string line;
	if (!std::getline(in, line) || line != kHeader) throw io::ParseError(1, "expected header '" + std::string(kHeader) + "'");
	Report r;
	std::set<std::string> seen;
	int n = 1;
	while (std::getline(in, line)) {
		++n;
		auto sp = line.find(' ');
		if (sp == std::string::npos) throw io::ParseError(n, "expected '<key> <value>'");
		std::string key = line.substr(0, sp), value = line.substr(sp + 1);
		if (!valid_key(key)) throw io::ParseError(n, "bad key");
		if (!value.empty() && value.back() == '\r') throw io::ParseError(n, "carriage return in value");
		if (!seen.insert(key).second) throw io::ParseError(n, "duplicate key '" + key + "'");
		r.set(key, value);
	}
	return r;
}

Report parse(const std::string &text) {
	std::istringstream in(text);
	return read(in);
}

} // namespace trichrome::report
