#ifndef FRACLAN_IO_HPP
#define FRACLAN_IO_HPP

#include <string>

namespace fraclan {

// Writes content to a sibling temp file and renames it into place, so readers
// never observe a partially written file.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace fraclan

#endif
