#pragma once

#include "efx/core.hpp"

#include <cstdint>
#include <string>

namespace efx {

// Instance files are JSON objects {"agents": n, "items": m, "valuations": [[...]]}
// where each valuation entry is a rational literal string ("p/q", exact decimal, or
// integer) or a plain JSON integer. Serialization is canonical: every value becomes
// "p/q", keys keep a fixed order, two-space indent, trailing newline — so identical
// instances serialize to identical bytes.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// Allocation files are JSON objects {"bundles": [[item ids]...], "donated": [item ids]}
// with 0-based ids; the donated list must be exactly the complement of the bundles.
Allocation parse_allocation(const Instance& inst, const std::string& text);
std::string serialize_allocation(const Allocation& a);
Allocation load_allocation(const Instance& inst, const std::string& path);
void save_allocation(const Allocation& a, const std::string& path);

// FNV-1a 64-bit digest of the canonical serialization, rendered "fnv1a64:<16 hex>".
// Stable across formatting differences in the source file.
std::string instance_digest(const Instance& inst);
std::uint64_t fnv1a64(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

} // namespace efx
