#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>

namespace cfn {

/// File name used inside CF_CACHE_DIR.
inline constexpr const char* kRank3CacheFile = "rank3.cfn";

/// Reads "CFN1" records into the rank-3 memo. Returns the number of records
/// loaded; a missing file loads nothing, a malformed one is reported to `diag`
/// and ignored.
std::size_t load_rank3_cache(const std::filesystem::path& file, std::ostream& diag);

/// Writes the whole rank-3 memo, replacing the file atomically.
void save_rank3_cache(const std::filesystem::path& file);

}  // namespace cfn
