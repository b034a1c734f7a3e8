#include "genmetrics/image_codec.hpp"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

// jpeglib.h needs size_t/FILE declared first.
#include <jpeglib.h>

#include "genmetrics/error.hpp"

namespace genmetrics {

std::optional<ImageFormat> sniff_format(std::span<const std::uint8_t> bytes) noexcept {
    static constexpr std::uint8_t png_sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), png_sig, 8) == 0) return ImageFormat::PNG;
    if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF)
        return ImageFormat::JPEG;
    return std::nullopt;
}

namespace {

struct PngReadState {
    std::span<const std::uint8_t> data;
    std::size_t offset = 0;
};

void png_read_from_span(png_structp png, png_bytep out, png_size_t count) {
    auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (state->offset + count > state->data.size()) png_error(png, "unexpected end of PNG data");
    std::memcpy(out, state->data.data() + state->offset, count);
    state->offset += count;
}

void png_silent_warning(png_structp, png_const_charp) {}

struct PngErrorContext {
    std::jmp_buf jump;
    char message[256] = {0};
    ErrorCode code = ErrorCode::MalformedImage;
};

void png_error_to_jump(png_structp png, png_const_charp msg) {
    auto* ctx = static_cast<PngErrorContext*>(png_get_error_ptr(png));
    std::snprintf(ctx->message, sizeof(ctx->message), "%s", msg);
    std::longjmp(ctx->jump, 1);
}

PixelBuffer decode_png(std::span<const std::uint8_t> encoded) {
    PngErrorContext ctx;
    PngReadState state{encoded, 0};
    std::vector<std::uint8_t> pixels;
    std::vector<png_bytep> rows;
    png_uint_32 width = 0, height = 0;
    int channels = 0;

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &ctx, png_error_to_jump,
                                             png_silent_warning);
    if (!png) throw Error(ErrorCode::MalformedImage, "cannot allocate PNG reader");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw Error(ErrorCode::MalformedImage, "cannot allocate PNG info");
    }

    if (setjmp(ctx.jump)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(ctx.code, ctx.message);
    }

    png_set_read_fn(png, &state, png_read_from_span);
    png_read_info(png, info);

    width = png_get_image_width(png, info);
    height = png_get_image_height(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);

    if (bit_depth == 16) {
        ctx.code = ErrorCode::UnsupportedPixelLayout;
        png_error(png, "16-bit PNG is not supported");
    }
    switch (color_type) {
        case PNG_COLOR_TYPE_GRAY:
            if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
            channels = 1;
            break;
        case PNG_COLOR_TYPE_PALETTE:
            png_set_palette_to_rgb(png);
            channels = 3;
            break;
        case PNG_COLOR_TYPE_RGB:
            channels = 3;
            break;
        default:
            ctx.code = ErrorCode::UnsupportedPixelLayout;
            png_error(png, "PNG with alpha channel is not supported");
    }
    if (png_get_interlace_type(png, info) != PNG_INTERLACE_NONE) png_set_interlace_handling(png);
    png_read_update_info(png, info);
    if (png_get_rowbytes(png, info) != static_cast<png_size_t>(width) * channels) {
        ctx.code = ErrorCode::UnsupportedPixelLayout;
        png_error(png, "unexpected PNG row layout");
    }

    pixels.resize(static_cast<std::size_t>(width) * height * channels);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = pixels.data() + static_cast<std::size_t>(y) * width * channels;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    return PixelBuffer::from_u8(static_cast<int>(width), static_cast<int>(height), channels, std::move(pixels));
}

struct JpegErrorContext {
    jpeg_error_mgr mgr;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX] = {0};
};

void jpeg_error_to_jump(j_common_ptr cinfo) {
    auto* ctx = reinterpret_cast<JpegErrorContext*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, ctx->message);
    std::longjmp(ctx->jump, 1);
}

void jpeg_silent(j_common_ptr, int) {}

PixelBuffer decode_jpeg(std::span<const std::uint8_t> encoded) {
    jpeg_decompress_struct cinfo;
    JpegErrorContext ctx;
    std::vector<std::uint8_t> pixels;
    ErrorCode code = ErrorCode::MalformedImage;
    std::string unsupported;

    cinfo.err = jpeg_std_error(&ctx.mgr);
    ctx.mgr.error_exit = jpeg_error_to_jump;
    ctx.mgr.emit_message = jpeg_silent;
    if (setjmp(ctx.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw Error(code, ctx.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, encoded.data(), static_cast<unsigned long>(encoded.size()));
    jpeg_read_header(&cinfo, TRUE);

    int channels = 0;
    switch (cinfo.jpeg_color_space) {
        case JCS_GRAYSCALE:
            cinfo.out_color_space = JCS_GRAYSCALE;
            channels = 1;
            break;
        case JCS_YCbCr:
        case JCS_RGB:
            cinfo.out_color_space = JCS_RGB;
            channels = 3;
            break;
        default:
            jpeg_destroy_decompress(&cinfo);
            throw Error(ErrorCode::UnsupportedPixelLayout, "JPEG color space not supported (CMYK/YCCK)");
    }
    jpeg_start_decompress(&cinfo);
    const auto width = cinfo.output_width;
    const auto height = cinfo.output_height;
    pixels.resize(static_cast<std::size_t>(width) * height * channels);
    while (cinfo.output_scanline < height) {
        JSAMPROW row = pixels.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * channels;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return PixelBuffer::from_u8(static_cast<int>(width), static_cast<int>(height), channels, std::move(pixels));
}

void png_write_to_vector(png_structp png, png_bytep data, png_size_t length) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + length);
}

void png_flush_noop(png_structp) {}

}  // namespace

PixelBuffer decode_image(std::span<const std::uint8_t> encoded, ImageFormat format) {
    if (encoded.empty()) throw Error(ErrorCode::MalformedImage, "empty byte stream");
    return format == ImageFormat::PNG ? decode_png(encoded) : decode_jpeg(encoded);
}

PixelBuffer decode_image(std::span<const std::uint8_t> encoded) {
    const auto format = sniff_format(encoded);
    if (!format) throw Error(ErrorCode::MalformedImage, "not a PNG or JPEG stream");
    return decode_image(encoded, *format);
}

std::vector<std::uint8_t> encode_png(const PixelBuffer& image) {
    const auto pixels = image.u8();  // throws WrongStorage for float buffers
    std::vector<std::uint8_t> out;
    PngErrorContext ctx;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &ctx, png_error_to_jump,
                                              png_silent_warning);
    if (!png) throw Error(ErrorCode::IoFailure, "cannot allocate PNG writer");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error(ErrorCode::IoFailure, "cannot allocate PNG info");
    }
    if (setjmp(ctx.jump)) {
        png_destroy_write_struct(&png, &info);
        throw Error(ErrorCode::IoFailure, ctx.message);
    }
    png_set_write_fn(png, &out, png_write_to_vector, png_flush_noop);
    png_set_compression_level(png, 6);
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width()), static_cast<png_uint_32>(image.height()), 8,
                 image.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const std::size_t stride = static_cast<std::size_t>(image.width()) * image.channels();
    for (int y = 0; y < image.height(); ++y)
        png_write_row(png, const_cast<png_bytep>(pixels.data() + y * stride));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorCode::IoFailure, "read failed: " + path.string());
    return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot create " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::IoFailure, "write failed: " + path.string());
}

PixelBuffer load_image(const std::filesystem::path& path) { return decode_image(read_file(path)); }

void save_png(const std::filesystem::path& path, const PixelBuffer& image) {
    write_file(path, encode_png(image));
}

}  // namespace genmetrics
