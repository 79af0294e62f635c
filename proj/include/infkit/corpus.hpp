#pragma once

// Corpus manifests: named files with machine-checkable expectations.

#include <filesystem>
#include <string>
#include <vector>

#include "infkit/io.hpp"

namespace infkit {

struct ManifestEntry {
  std::string name;
  FileKind kind = FileKind::Formula;
  std::string file;  // relative to the manifest's directory
  Json expect = Json::object();
};

struct Manifest {
  std::filesystem::path dir;
  std::vector<ManifestEntry> entries;
};

Manifest load_manifest(const std::filesystem::path& file);

struct EntryReport {
  std::string name;
  std::string file;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  bool input_error = false;
  bool ok() const { return failures.empty(); }
};

struct CorpusReport {
  std::vector<EntryReport> entries;
  std::vector<std::string> warnings;
  std::size_t checks() const;
  bool ok() const;
  bool input_error() const;
  std::string to_string() const;
};

/// Runs one entry; never throws (errors become failures).
EntryReport run_entry(const Manifest& m, const ManifestEntry& e);

/// Entries run concurrently; the report keeps manifest order.
CorpusReport run_corpus(const Manifest& m);
CorpusReport run_corpus(const std::filesystem::path& manifest_file);

/// True iff the file's bytes equal emit(parse(file)).
bool roundtrip_identical(const std::filesystem::path& file, FileKind kind, std::string* emitted = nullptr);

}  // namespace infkit
