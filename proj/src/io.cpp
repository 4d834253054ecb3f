/*
   Copyright 2026 The qdesign Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "qdesign/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace qdesign {

namespace {

// `prefix` > 0 is written before each block as its part index.
void write_blocks(std::ostream& out, const BlockSet& blocks, int prefix = 0) {
    const unsigned q = blocks.field()->q();
    std::vector<Element> cm(static_cast<size_t>(blocks.k()) * blocks.v());
    for (auto key : blocks.keys()) {
        unpack_canonical(key, blocks.k(), blocks.v(), q, cm.data());
        if (prefix > 0) out << prefix;
        for (int i = 0; i < blocks.k(); ++i) {
            if (i || prefix > 0) out << ' ';
            out << encode_row(cm.data() + static_cast<size_t>(i) * blocks.v(), blocks.v(), q);
        }
        out << '\n';
    }
}

std::string strip(std::string line) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = line.find_last_not_of(" \t\r");
    return line.substr(b, e - b + 1);
}

struct Header {
    FileKind kind;
    std::map<std::string, std::string> fields;
};

Header parse_header(const std::string& line, int lineno) {
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    Header h;
    if (word == "design")
        h.kind = FileKind::Design;
    else if (word == "largeset")
        h.kind = FileKind::LargeSet;
    else
        throw ParseError(lineno, "expected a 'design' or 'largeset' header, got '" + word + "'");
    while (ss >> word) {
        const auto eq = word.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError(lineno, "malformed header field '" + word + "'");
        h.fields[word.substr(0, eq)] = word.substr(eq + 1);
    }
    return h;
}

long long header_int(const Header& h, const std::string& key, int lineno) {
    auto it = h.fields.find(key);
    if (it == h.fields.end()) throw ParseError(lineno, "header is missing '" + key + "='");
    try {
        std::size_t used = 0;
        long long x = std::stoll(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(key);
        return x;
    } catch (const std::logic_error&) {
        throw ParseError(lineno, "header field '" + key + "' is not an integer");
    }
}

}  // namespace

void write_design(std::ostream& out, const SubspaceDesign& d) {
    out << "design q=" << d.blocks.field()->q() << " v=" << d.v() << " k=" << d.k() << " t=" << d.t
        << " lambda=" << d.lambda << "\n";
    write_blocks(out, d.blocks);
}

void write_large_set(std::ostream& out, const LargeSet& ls) {
    out << "largeset q=" << ls.field()->q() << " v=" << ls.v() << " k=" << ls.k() << " t=" << ls.t << " N=" << ls.N()
        << "\n";
    for (int i = 0; i < ls.N(); ++i) write_blocks(out, ls.parts[i], i + 1);
}

std::optional<BigCount> implied_lambda(const BlockSet& blocks, int t) {
    const unsigned q = blocks.field()->q();
    const BigCount num = BigCount(blocks.size()) * gaussian_binomial(blocks.k(), t, q);
    const BigCount den = gaussian_binomial(blocks.v(), t, q);
    if (den == 0 || num % den != 0) return std::nullopt;
    return num / den;
}

DesignFile read_design_file(std::istream& in) {
    std::string raw;
    int lineno = 0;
    std::optional<Header> header;
    int header_line = 0;
    FieldPtr field;
    int v = 0, k = 0, t = 0, N = 0;
    DesignFile file;
    std::vector<BlockSet> parts;
    // (key, line) per part, consulted only to locate a repeated block.
    std::vector<std::vector<std::pair<PackedKey, int>>> origin;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = strip(raw);
        if (line.empty()) continue;
        if (!header) {
            header = parse_header(line, lineno);
            header_line = lineno;
            file.kind = header->kind;
            const long long q = header_int(*header, "q", lineno);
            v = static_cast<int>(header_int(*header, "v", lineno));
            k = static_cast<int>(header_int(*header, "k", lineno));
            t = static_cast<int>(header_int(*header, "t", lineno));
            if (q < 2 || q > 255) throw ParseError(lineno, "q out of range");
            try {
                field = GaloisField::make(static_cast<unsigned>(q));
            } catch (const Error& e) {
                throw ParseError(lineno, e.what());
            }
            if (v < 0 || k < 0 || k > v) throw ParseError(lineno, "need 0 <= k <= v");
            if (t < 0 || t > k) throw ParseError(lineno, "need 0 <= t <= k");
            if (!packable(v, k, field->q())) throw ParseError(lineno, "parameters too large for packed subspace keys");
            if (file.kind == FileKind::LargeSet) {
                N = static_cast<int>(header_int(*header, "N", lineno));
                if (N < 1) throw ParseError(lineno, "N must be positive");
                parts.assign(N, BlockSet(field, v, k));
                origin.resize(N);
            } else {
                parts.emplace_back(field, v, k);
                origin.resize(1);
                if (header->fields.count("lambda")) {
                    try {
                        file.design.lambda = BigCount(header->fields.at("lambda"));
                    } catch (const std::exception&) {
                        throw ParseError(lineno, "header field 'lambda' is not an integer");
                    }
                    file.lambda_given = true;
                }
            }
            continue;
        }
        std::vector<std::uint64_t> codes;
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            std::size_t used = 0;
            unsigned long long c = 0;
            try {
                c = std::stoull(tok, &used);
            } catch (const std::logic_error&) {
                used = 0;
            }
            if (used != tok.size() || tok[0] == '-') throw ParseError(lineno, "'" + tok + "' is not an integer");
            codes.push_back(c);
        }
        BlockSet* target = &parts.front();
        if (file.kind == FileKind::LargeSet) {
            const std::uint64_t idx = codes.front();
            if (idx < 1 || idx > static_cast<std::uint64_t>(N))
                throw ParseError(lineno, "part index " + std::to_string(idx) + " outside 1.." + std::to_string(N));
            target = &parts[idx - 1];
            codes.erase(codes.begin());
        }
        if (static_cast<int>(codes.size()) != k)
            throw ParseError(lineno, "expected " + std::to_string(k) + " row codes, got " + std::to_string(codes.size()));
        try {
            const Subspace b = decode_block(field, v, codes);
            target->add(b);
            origin[target - parts.data()].emplace_back(pack(b), lineno);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(lineno, e.what());
        }
    }
    if (!header) throw ParseError(lineno, "empty file");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        try {
            parts[i].normalize();
        } catch (const Error& e) {
            auto& o = origin[i];
            std::stable_sort(o.begin(), o.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            for (std::size_t j = 1; j < o.size(); ++j)
                if (o[j].first == o[j - 1].first)
                    throw ParseError(o[j].second, "block repeats line " + std::to_string(o[j - 1].second));
            throw ParseError(header_line, (file.kind == FileKind::LargeSet ? "part " + std::to_string(i) + ": " : "") + e.what());
        }
    }
    if (file.kind == FileKind::LargeSet) {
        file.large_set.t = t;
        file.large_set.parts = std::move(parts);
    } else {
        file.design.t = t;
        file.design.blocks = std::move(parts.front());
        if (!file.lambda_given) {
            auto l = implied_lambda(file.design.blocks, t);
            if (!l) throw ParseError(header_line, "no lambda given and the block count does not determine one");
            file.design.lambda = *l;
        }
    }
    return file;
}

void save_design(const std::string& path, const SubspaceDesign& d) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    write_design(out, d);
    if (!out) throw Error("write to " + path + " failed");
}

void save_large_set(const std::string& path, const LargeSet& ls) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    write_large_set(out, ls);
    if (!out) throw Error("write to " + path + " failed");
}

DesignFile load_design_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    return read_design_file(in);
}

nlohmann::json report_json(const VerifyReport& r) {
    nlohmann::json j;
    j["ok"] = r.ok;
    j["message"] = r.message;
    j["blocks"] = r.blocks;
    j["t_subspaces"] = r.t_subspaces;
    if (r.witness) {
        j["witness"] = encode_block(*r.witness);
        j["witness_count"] = r.witness_count;
    }
    return j;
}

}  // namespace qdesign
