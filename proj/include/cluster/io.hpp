#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cluster/bases.hpp"
#include "cluster/ccmap.hpp"
#include "cluster/explore.hpp"
#include "cluster/matrix.hpp"
#include "cluster/seed.hpp"

namespace cluster::io {

// Contents of a seed file, before any frame is built.
struct SeedFile {
    std::vector<std::string> vertices;
    std::vector<std::string> frozen;
    std::vector<int> d;
    IntMatrix b;
    std::optional<IntMatrix> lambda;
};

// Parsing throws ParseError with the offending field (and line for JSON syntax errors).
SeedFile parse_seed_file(std::string_view text);
std::string write_seed_file(const SeedFile& f);

// Validates skew-symmetrizability and rank. A quantum seed uses the file's
// lambda (checked for compatibility) or a computed one when it is absent.
Seed seed_from_file(const SeedFile& f, bool quantum);
// The current exchange data of s under its vertex names.
SeedFile file_from_seed(const Seed& s);

Triangulation parse_triangulation(std::string_view text);
std::string write_triangulation(const Triangulation& t);

QuiverRep parse_rep(std::string_view text);
std::string write_rep(const QuiverRep& r);

std::string write_catalog(const SeedCatalog& c);

// {"elements": [canonical element text, ...]}
std::vector<TorusElement> parse_family(std::string_view text, const FramePtr& frame);
std::string write_family(const std::vector<TorusElement>& family);

std::string read_file(const std::string& path);

// "[1,-2,0]" or "1,-2,0"
std::vector<int> parse_int_list(std::string_view text);

}  // namespace cluster::io
