from apkwarden.domain.entities.dex import MethodId
from tests.builders.apps import (
    ACTIVITY,
    MiniApp,
    activity,
    application_app,
    descriptor,
    listener_app,
    on_create,
    receiver_app,
)
from tests.builders.dex_assembler import (
    ACC_ABSTRACT,
    ACC_INTERFACE,
    ACC_PRIVATE,
    ACC_PUBLIC,
    ACC_STATIC,
    ClassSpec,
    FieldSpec,
    MethodSpec,
    const_string,
    iget_object,
    invoke,
    return_void,
)

PKG = "com.example.graph"
MAIN = descriptor(PKG, "MainActivity")
STORE = descriptor(PKG, "Store")
PUT = "(Ljava/lang/String;)V"
ON_CREATE = "(Landroid/os/Bundle;)V"


def _mid(cls: str, name: str, proto: str) -> MethodId:
    return MethodId("classes.dex", cls, name, proto)


def _helper_app() -> MiniApp:
    helper = MethodSpec("helper", "()V", [return_void()], ACC_PRIVATE | ACC_STATIC)
    main = activity(MAIN, on_create(0, invoke("static", f"{MAIN}->helper()V")), helper)
    return MiniApp("graph", PKG, [main])


def _store_app() -> MiniApp:
    body = on_create(
        2,
        iget_object(0, 2, f"{MAIN}->store:{STORE}"),
        const_string(1, "k"),
        invoke("interface", f"{STORE}->put{PUT}", 0, 1),
    )
    iface = ClassSpec(
        STORE,
        flags=ACC_PUBLIC | ACC_INTERFACE | ACC_ABSTRACT,
        methods=[MethodSpec("put", PUT, None, ACC_PUBLIC | ACC_ABSTRACT)],
    )
    impls = [
        ClassSpec(
            descriptor(PKG, n),
            interfaces=[STORE],
            methods=[MethodSpec("put", PUT, [return_void()])],
        )
        for n in ("MemStore", "DiskStore")
    ]
    main = activity(MAIN, body, fields=[FieldSpec("store", STORE, ACC_PRIVATE)])
    return MiniApp("store", PKG, [main, iface, *impls])


# ----- Test 1: nodes, boundary nodes and edges ----
def test_graph_shape(analyse):
    cg = analyse(_helper_app()).cg
    on_create_id = _mid(MAIN, "onCreate", ON_CREATE)
    helper = _mid(MAIN, "helper", "()V")

    assert len(cg.nodes) == 3
    assert [str(n) for n in cg.boundary_nodes] == [
        "Landroid/app/Activity;->onCreate(Landroid/os/Bundle;)V"
    ]
    assert len(cg.edges) == 2
    assert all(e.caller == on_create_id for e in cg.edges)
    assert cg.callers(helper) == [on_create_id]
    assert helper in cg.callees(on_create_id)

    assert cg.entry_points == frozenset({on_create_id})
    assert cg.is_reachable(helper)
    assert set(cg.reachable()) == set(cg.nodes)


# ----- Test 2: interface call resolved to every implementor ----
def test_interface_call_has_one_edge_per_implementor(analyse):
    cg = analyse(_store_app()).cg
    on_create_id = _mid(MAIN, "onCreate", ON_CREATE)
    puts = [e for e in cg.edges if e.callee.name == "put"]

    assert len(puts) == 2
    assert len({e.site for e in puts}) == 1
    targets = cg.targets(on_create_id, puts[0].site)
    assert [t.class_descriptor for t in targets] == [
        descriptor(PKG, "DiskStore"),
        descriptor(PKG, "MemStore"),
    ]
    assert not any(t.is_boundary for t in targets)
    # the abstract declaration is not a call target
    assert _mid(STORE, "put", PUT) not in cg.reachable()


def test_unresolved_call_ends_in_boundary_node(analyse):
    cg = analyse(_helper_app()).cg
    super_call = [e for e in cg.edges if e.callee.is_boundary]
    assert len(super_call) == 1
    assert super_call[0].callee.class_descriptor == ACTIVITY


# ----- Test 3: entry points ----
def test_no_components_no_entry_points(analyse):
    app = _helper_app()
    app.components = ""
    cg = analyse(app).cg
    assert cg.entry_points == frozenset()
    assert cg.reachable() == frozenset()
    assert len(cg.nodes) == 3


def test_receiver_lifecycle_is_entry_point(analyse):
    cg = analyse(receiver_app()).cg
    receiver = descriptor("com.example.sync", "BootReceiver")
    on_receive = _mid(receiver, "onReceive", "(Landroid/content/Context;Landroid/content/Intent;)V")
    # SyncService is declared but not in the program
    assert cg.entry_points == frozenset({on_receive})


def test_application_subclass_is_entry_point(analyse):
    cg = analyse(application_app()).cg
    pkg = "com.example.appclass"
    assert _mid(descriptor(pkg, "App"), "onCreate", "()V") in cg.entry_points
    assert _mid(descriptor(pkg, "MainActivity"), "onCreate", ON_CREATE) in cg.entry_points


def test_registered_listener_callbacks(analyse):
    cg = analyse(listener_app()).cg
    pkg = "com.example.listener"
    click = _mid(descriptor(pkg, "ClickHandler"), "onClick", "(Landroid/view/View;)V")
    orphan = _mid(descriptor(pkg, "OrphanHandler"), "onClick", "(Landroid/view/View;)V")

    assert cg.entry_points == frozenset(
        {_mid(descriptor(pkg, "MainActivity"), "onCreate", ON_CREATE), click}
    )
    assert cg.is_reachable(_mid(descriptor(pkg, "ClickHandler"), "<init>", "()V"))
    assert not cg.is_reachable(orphan)

    trimmed = cg.without_entry_points([click])
    assert not trimmed.is_reachable(click)
    assert cg.is_reachable(click)
