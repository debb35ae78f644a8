import struct

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apkwarden.services.dex import all_invocations, decode_method, parse_dex, resource_id_names
from apkwarden.services.dex.errors import (
    AbstractOrNative,
    BadMagic,
    IndexOutOfRange,
    MethodNotFound,
    TruncatedSection,
    UnsupportedVersion,
)
from apkwarden.services.dex.reader import decode_mutf8
from tests.builders import apps
from tests.builders.dex_assembler import (
    ACC_ABSTRACT,
    ACC_FINAL,
    ACC_INTERFACE,
    ACC_PRIVATE,
    ACC_PUBLIC,
    ACC_STATIC,
    ClassSpec,
    FieldSpec,
    MethodSpec,
    assemble,
    const,
    const4,
    const16,
    const_string,
    goto,
    goto16,
    if_eqz,
    if_nez,
    invoke_range,
    label,
    move_object,
    nop,
    return_object,
    return_void,
    sget_object,
    sput_object,
)

STR = "Ljava/lang/String;"


def _fields_only():
    return [
        ClassSpec(
            "Lcom/example/Config;",
            flags=ACC_PUBLIC | ACC_FINAL,
            fields=[
                FieldSpec("MAX", "I", ACC_PUBLIC | ACC_STATIC | ACC_FINAL, 1024),
                FieldSpec("HOST", STR, ACC_PUBLIC | ACC_STATIC | ACC_FINAL, "example.org"),
                FieldSpec("ENABLED", "Z", ACC_PUBLIC | ACC_STATIC, True),
                FieldSpec("NEG", "I", ACC_PUBLIC | ACC_STATIC, -129),
                FieldSpec("cache", "Ljava/util/Map;", ACC_PRIVATE),
                FieldSpec("count", "J", ACC_PRIVATE),
            ],
        )
    ]


def _interface():
    return [
        ClassSpec(
            "Lcom/example/Store;",
            flags=ACC_PUBLIC | ACC_INTERFACE | ACC_ABSTRACT,
            methods=[
                MethodSpec("put", f"({STR}{STR})V", None, ACC_PUBLIC | ACC_ABSTRACT),
                MethodSpec("get", f"({STR}){STR}", None, ACC_PUBLIC | ACC_ABSTRACT),
            ],
        )
    ]


def _unicode_strings():
    texts = ["ünïcødé", "nul\u0000inside", "emoji 😀 pair", "x" * 500, "日本語", ""]
    code = [const_string(0, t) for t in texts] + [return_void()]
    return [ClassSpec("Lcom/example/Text;", methods=[MethodSpec("run", "()V", code, locals=1)])]


def _branches():
    code = [
        const4(0, 0),
        if_eqz(0, "skip"),
        const_string(1, "taken"),
        goto("end"),
        label("skip"),
        nop(),
        if_nez(0, "far"),
        const_string(1, "fallthrough"),
        label("end"),
        goto16("far"),
        label("far"),
        return_void(),
    ]
    return [
        ClassSpec("Lcom/example/Flow;", methods=[MethodSpec("branch", "()V", code, locals=2)])
    ]


def _literals():
    code = [
        const4(0, -8),
        const4(0, 7),
        const16(0, -300),
        const(0, -100000),
        const(0, 0x7FFFFFFF),
        return_void(),
    ]
    return [
        ClassSpec(
            "Lcom/example/Numbers;",
            source_file="Numbers.java",
            fields=[
                FieldSpec("BIG", "I", ACC_STATIC, 0x7FFFFFFF),
                FieldSpec("NONE", STR, ACC_STATIC),
            ],
            methods=[MethodSpec("lits", "()V", code, ACC_STATIC, locals=1)],
        )
    ]


def _hierarchy():
    base = "Lcom/example/Base;"
    impl = "Lcom/example/Impl;"
    return [
        ClassSpec(
            base,
            interfaces=["Ljava/lang/Runnable;"],
            source_file="Base.kt",
            methods=[MethodSpec("run", "()V", [return_void()])],
        ),
        ClassSpec(
            impl,
            superclass=base,
            interfaces=["Ljava/io/Closeable;", "Ljava/lang/Comparable;"],
            fields=[FieldSpec("shared", STR, ACC_STATIC)],
            methods=[
                MethodSpec(
                    "swap",
                    f"({STR}){STR}",
                    [
                        sget_object(0, f"{impl}->shared:{STR}"),
                        sput_object(2, f"{impl}->shared:{STR}"),
                        move_object(1, 0),
                        return_object(1),
                    ],
                    locals=2,
                ),
                MethodSpec(
                    "wide",
                    "(JDLjava/lang/Object;)V",
                    [
                        invoke_range("static", f"{impl}->sink(JDLjava/lang/Object;)V", 1, 5),
                        return_void(),
                    ],
                ),
                MethodSpec("sink", "(JDLjava/lang/Object;)V", [return_void()], ACC_STATIC),
            ],
        ),
    ]


FIXTURES = {
    "empty-class": lambda: [ClassSpec("Lcom/example/Empty;")],
    "fields-only": _fields_only,
    "interface": _interface,
    "unicode-strings": _unicode_strings,
    "branches": _branches,
    "literals": _literals,
    "hierarchy": _hierarchy,
    "leaky-app": lambda: apps.leaky_app().classes,
    "crypto-app": lambda: apps.crypto_app().classes,
    "webview-app": lambda: apps.webview_app().classes,
    "form-app": lambda: apps.viewtext_app().classes,
    "flows-app": lambda: apps.flows_app().classes,
    "listener-app": lambda: apps.listener_app().classes,
}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_parse_matches_listing(name):
    asm = assemble(FIXTURES[name]())
    listing = asm.listing
    dex = parse_dex(asm.data, "classes.dex")

    assert dex.version == "035"
    assert dex.strings == listing.strings
    assert dex.types == listing.types
    assert tuple((p.shorty, p.return_type, p.parameters) for p in dex.protos) == listing.protos
    assert tuple(str(f) for f in dex.fields) == listing.fields
    assert tuple(str(m) for m in dex.methods) == listing.methods
    assert dex.warnings == ()

    assert len(dex.classes) == len(listing.classes)
    for got, want in zip(dex.classes, listing.classes):
        assert got.descriptor == want.descriptor
        assert got.superclass == want.superclass
        assert got.interfaces == want.interfaces
        assert got.source_file == want.source_file
        assert tuple(f.ref.name for f in got.static_fields) == want.static_fields
        assert tuple(f.ref.name for f in got.instance_fields) == want.instance_fields
        assert tuple(m.ref.signature for m in got.direct_methods) == want.direct_methods
        assert tuple(m.ref.signature for m in got.virtual_methods) == want.virtual_methods
        assert got.static_values == want.static_values

    for text, layout in listing.code.items():
        cls, rest = text.split("->", 1)
        mname, proto = rest[: rest.index("(")], rest[rest.index("(") :]
        body = decode_method(dex, cls, mname, proto)
        assert tuple((i.offset, i.opcode, i.width) for i in body.instructions) == layout


def test_string_and_literal_details():
    dex = parse_dex(assemble(_unicode_strings()).data)
    body = decode_method(dex, "Lcom/example/Text;", "run")
    assert [i.string for i in body.instructions[:-1]] == [
        "ünïcødé",
        "nul\u0000inside",
        "emoji 😀 pair",
        "x" * 500,
        "日本語",
        "",
    ]

    dex = parse_dex(assemble(_literals()).data)
    body = decode_method(dex, "Lcom/example/Numbers;", "lits", "()V")
    assert [i.literal for i in body.instructions[:-1]] == [-8, 7, -300, -100000, 0x7FFFFFFF]
    assert body.is_static
    cls = dex.class_def("Lcom/example/Numbers;")
    # trailing fields without an initializer have no encoded value
    assert cls.static_initial_values() == {"BIG": 0x7FFFFFFF}


def test_branch_targets_are_absolute_byte_offsets():
    dex = parse_dex(assemble(_branches()).data)
    body = decode_method(dex, "Lcom/example/Flow;", "branch")
    by_name = {}
    for ins in body.instructions:
        by_name.setdefault(ins.mnemonic, ins)
    ret = body.instructions[-1]
    assert by_name["if-eqz"].branch_target == by_name["nop"].offset
    assert by_name["goto"].branch_target == by_name["goto/16"].offset
    assert by_name["if-nez"].branch_target == ret.offset
    assert by_name["goto/16"].branch_target == ret.offset
    assert by_name["if-eqz"].registers == (0,)


def test_invoke_operands():
    dex = parse_dex(assemble(apps.leaky_app().classes).data)
    body = decode_method(dex, "Lcom/example/leaky/MainActivity;", "onCreate")
    invokes = [i for i in body.instructions if i.is_invoke]
    assert invokes[0].mnemonic == "invoke-super"
    assert invokes[0].registers == (8, 9)
    log = next(i for i in invokes if i.method.name == "v")
    assert str(log.method) == apps.LOG_V
    assert log.registers == (3, 2)
    send = invokes[-1]
    assert send.mnemonic == "invoke-virtual/range"
    assert send.registers == (2, 3, 4, 5, 6, 7)
    assert body.registers_size == 10 and body.ins_size == 2
    assert body.first_param_register == 8


def test_all_invocations_order():
    dex = parse_dex(assemble(apps.flows_app().classes).data)
    calls = [(i.caller.name, i.callee.name) for i in all_invocations(dex)]
    assert calls == [
        ("onCreate", "onCreate"),
        ("onCreate", "getColumnIndex"),
        ("onCreate", "getString"),
        ("onCreate", "<init>"),
        ("onCreate", "export"),
        ("export", "<init>"),
        ("export", "putString"),
        ("export", "<init>"),
        ("export", "putAll"),
        ("leak", "getLatitude"),
        ("leak", "toString"),
        ("leak", "getDefault"),
        ("leak", "sendTextMessage"),
    ]


def test_resource_id_names():
    dex = parse_dex(assemble(apps.viewtext_app().classes).data)
    assert resource_id_names([dex]) == {
        apps.PHONE_INPUT_ID: "phone_input",
        apps.BANNER_ID: "banner",
    }


def test_newer_versions_accepted():
    for version in ("037", "038", "039"):
        assert parse_dex(assemble(_interface(), version=version).data).version == version


def test_unsorted_string_pool_is_a_warning():
    dex = parse_dex(assemble(_fields_only(), unsorted_strings=True).data)
    assert [w.code for w in dex.warnings] == ["string-pool-unsorted"]


def test_decode_mutf8():
    assert decode_mutf8(b"a\xc0\x80b") == ("a\x00b", False)
    assert decode_mutf8(b"\xed\xa0\xbd\xed\xb8\x80") == ("😀", False)
    text, repaired = decode_mutf8(b"ok\xff")
    assert repaired and text == "ok\ufffd"


def test_bad_magic_carries_entry_name():
    with pytest.raises(BadMagic) as ei:
        parse_dex(b"PK\x03\x04 definitely not dex" + b"\x00" * 200, "classes3.dex")
    assert ei.value.entry == "classes3.dex"
    assert ei.value.offset == 0


def test_bad_endian_tag():
    data = bytearray(assemble(_interface()).data)
    struct.pack_into("<I", data, 0x28, 0x78563412)
    with pytest.raises(BadMagic) as ei:
        parse_dex(bytes(data))
    assert ei.value.offset == 0x28


def test_unsupported_version():
    with pytest.raises(UnsupportedVersion) as ei:
        parse_dex(assemble(_interface(), version="034").data)
    assert ei.value.offset == 4


def test_truncated_sections():
    data = assemble(apps.leaky_app().classes).data
    with pytest.raises(TruncatedSection):
        parse_dex(data[:0x60])
    with pytest.raises(TruncatedSection):
        parse_dex(data[:0x90])


def test_index_out_of_range_reports_offset():
    data = bytearray(assemble(_fields_only()).data)
    (type_ids_off,) = struct.unpack_from("<I", data, 0x44)
    struct.pack_into("<I", data, type_ids_off, 0xFFFF)
    with pytest.raises(IndexOutOfRange) as ei:
        parse_dex(bytes(data), "classes.dex")
    assert ei.value.offset == type_ids_off
    assert ei.value.entry == "classes.dex"


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_any_out_of_range_type_index_is_reported(data):
    image = bytearray(assemble(_fields_only()).data)
    (n_strings,) = struct.unpack_from("<I", image, 0x38)
    n_types, type_ids_off = struct.unpack_from("<II", image, 0x40)
    slot = type_ids_off + 4 * data.draw(st.integers(0, n_types - 1), label="type id")
    struct.pack_into("<I", image, slot, data.draw(st.integers(n_strings, 2**32 - 1)))

    with pytest.raises(IndexOutOfRange) as ei:
        parse_dex(bytes(image))
    assert ei.value.offset == slot


def test_decode_method_errors():
    dex = parse_dex(assemble(_interface()).data)
    with pytest.raises(AbstractOrNative):
        decode_method(dex, "Lcom/example/Store;", "put")
    with pytest.raises(MethodNotFound):
        decode_method(dex, "Lcom/example/Store;", "remove")
    with pytest.raises(MethodNotFound):
        decode_method(dex, "Lcom/example/Missing;", "put")
