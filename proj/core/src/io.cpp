#include "bethelab/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bethe {

JsonValue JsonValue::boolean(bool b) {
    JsonValue v;
    v.kind_ = Kind::Bool;
    v.b_ = b;
    return v;
}
JsonValue JsonValue::integer(std::int64_t i) {
    JsonValue v;
    v.kind_ = Kind::Int;
    v.i_ = i;
    return v;
}
JsonValue JsonValue::number(double d) {
    JsonValue v;
    v.kind_ = Kind::Double;
    v.d_ = d;
    return v;
}
JsonValue JsonValue::string(std::string s) {
    JsonValue v;
    v.kind_ = Kind::String;
    v.s_ = std::move(s);
    return v;
}
JsonValue JsonValue::array() {
    JsonValue v;
    v.kind_ = Kind::Array;
    return v;
}
JsonValue JsonValue::object() {
    JsonValue v;
    v.kind_ = Kind::Object;
    return v;
}

JsonValue& JsonValue::push_back(JsonValue v) {
    if (kind_ != Kind::Array) throw std::logic_error("JsonValue: push_back on non-array");
    items_.push_back(std::move(v));
    return *this;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    if (kind_ != Kind::Object) throw std::logic_error("JsonValue: set on non-object");
    for (auto& [k, old] : members_) {
        if (k == key) {
            old = std::move(v);
            return *this;
        }
    }
    members_.emplace_back(key, std::move(v));
    return *this;
}

std::string format_double(double d) {
    if (std::isnan(d)) return "\"nan\"";
    if (std::isinf(d)) return d > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

std::string quote_json(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

void JsonValue::write(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (kind_) {
        case Kind::Null: out += "null"; break;
        case Kind::Bool: out += b_ ? "true" : "false"; break;
        case Kind::Int: out += std::to_string(i_); break;
        case Kind::Double: out += format_double(d_); break;
        case Kind::String: out += quote_json(s_); break;
        case Kind::Array:
            if (items_.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < items_.size(); ++i) {
                out += pad_in;
                items_[i].write(out, indent, depth + 1);
                if (i + 1 < items_.size()) out += ',';
                out += '\n';
            }
            out += pad + "]";
            break;
        case Kind::Object:
            if (members_.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            for (std::size_t i = 0; i < members_.size(); ++i) {
                out += pad_in + quote_json(members_[i].first) + ": ";
                members_[i].second.write(out, indent, depth + 1);
                if (i + 1 < members_.size()) out += ',';
                out += '\n';
            }
            out += pad + "}";
            break;
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        out += header[i];
        out += (i + 1 < header.size()) ? ',' : '\n';
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out += buf;
            out += (i + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

std::string matrix_csv(const Eigen::MatrixXd& A) {
    std::string out = "# " + std::to_string(A.rows()) + " " + std::to_string(A.cols()) + " f64\n";
    for (long i = 0; i < A.rows(); ++i) {
        for (long j = 0; j < A.cols(); ++j) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", A(i, j));
            out += buf;
            out += (j + 1 < A.cols()) ? ',' : '\n';
        }
    }
    return out;
}

std::string matrix_binary(const Eigen::MatrixXd& A) {
    std::string out = "BMAT";
    auto put_u32 = [&](std::uint32_t v) {
        for (int k = 0; k < 4; ++k) out += static_cast<char>((v >> (8 * k)) & 0xff);
    };
    put_u32(static_cast<std::uint32_t>(A.rows()));
    put_u32(static_cast<std::uint32_t>(A.cols()));
    out += 'd';
    for (long i = 0; i < A.rows(); ++i)
        for (long j = 0; j < A.cols(); ++j) {
            double v = A(i, j);
            char raw[8];
            std::memcpy(raw, &v, 8);
            out.append(raw, 8);
        }
    return out;
}

Eigen::MatrixXd read_matrix_binary(const std::string& bytes) {
    if (bytes.size() < 13 || bytes.compare(0, 4, "BMAT") != 0 || bytes[12] != 'd')
        throw std::runtime_error("read_matrix_binary: bad header");
    auto get_u32 = [&](std::size_t off) {
        std::uint32_t v = 0;
        for (int k = 0; k < 4; ++k)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[off + k])) << (8 * k);
        return v;
    };
    const std::uint32_t rows = get_u32(4), cols = get_u32(8);
    if (bytes.size() != 13 + std::size_t(rows) * cols * 8)
        throw std::runtime_error("read_matrix_binary: truncated payload");
    Eigen::MatrixXd A(rows, cols);
    std::size_t off = 13;
    for (std::uint32_t i = 0; i < rows; ++i)
        for (std::uint32_t j = 0; j < cols; ++j) {
            double v;
            std::memcpy(&v, bytes.data() + off, 8);
            A(i, j) = v;
            off += 8;
        }
    return A;
}

} // namespace bethe
