"""
Synthetic log corpora in the line formats of the 16 Loghub systems.

Each generator is deterministic for a given seed and mimics the header
layout and common message templates of that system's public 2k sample,
with clocks that only move forward and IDs that get reused.
They are stand-ins for desk testing and benchmarking when the real sample
files are not at hand; ``load_samples`` prefers real files when a
directory of ``<System>_2k.log`` files is given.
"""
from __future__ import annotations

import datetime as dt
import os
import random
from pathlib import Path
from typing import Callable, Iterator

SYSTEMS = (
    "Android", "Apache", "BGL", "Hadoop", "HDFS", "HealthApp", "HPC", "Linux",
    "Mac", "OpenSSH", "OpenStack", "Proxifier", "Spark", "Thunderbird",
    "Windows", "Zookeeper",
)

ABLATION_SYSTEMS = ("HDFS", "HPC", "Mac", "Android", "Apache", "Proxifier")

SAMPLE_LINES = 2000

# Six Apache-style lines with one of each common numeric token kind:
# times, an IPv4 client, incrementing child ids, hashes, small codes.
APACHE_SAMPLE = (
    b"[Sun Dec 04 03:03:05 2005] [notice] jk2_init() Can't find child 4213 in scoreboard\n"
    b"[Sun Dec 04 03:03:05 2005] [error] [client 202.133.98.6] Directory index forbidden by rule: /var/www/html/\n"
    b"[Sun Dec 04 03:03:06 2005] [notice] jk2_init() Found child 4214 in scoreboard slot 11\n"
    b"[Sun Dec 04 03:03:06 2005] [error] session 5854eb7b8b09 closed by peer\n"
    b"[Sun Dec 04 03:03:06 2005] [notice] jk2_init() Found child 4215 in scoreboard slot 11\n"
    b"[Sun Dec 04 03:03:07 2005] [error] session d8c05cb23ebc mod_jk child workerEnv in error state 6\n"
)


class _Clock:
    def __init__(self, rng: random.Random, start: dt.datetime, mean_gap: float):
        self.rng = rng
        self.t = start
        self.mean_gap = mean_gap

    def tick(self) -> dt.datetime:
        gap = self.rng.expovariate(1.0 / self.mean_gap) if self.mean_gap > 0 else 0.0
        self.t += dt.timedelta(seconds=gap)
        return self.t


def _hex(rng, n):
    return "".join(rng.choice("0123456789abcdef") for _ in range(n))


def _ip(rng, prefix=None):
    if prefix:
        return prefix + ".".join(str(rng.randint(1, 254)) for _ in range(4 - prefix.count(".")))
    return ".".join(str(rng.randint(1, 254)) for _ in range(4))


def _android(rng, n):
    clock = _Clock(rng, dt.datetime(2017, 3, 17, 16, 13, 38), 0.05)
    pids = [1702, 2227, 1156, 2395, 3345, 1017]
    tags = ["PowerManagerService", "WindowManager", "ActivityManager", "DisplayPowerController",
            "PhoneStatusBar", "Tethering", "KeyguardUpdateMonitor"]
    tokens = [_hex(rng, 7) for _ in range(20)]
    for _ in range(n):
        t = clock.tick()
        pid = rng.choice(pids)
        tid = pid + rng.choice([0, 0, 13, 693, 1241])
        lvl = rng.choice("DDDIIVWE")
        tag = rng.choice(tags)
        k = rng.random()
        if k < 0.25:
            msg = (f"acquire lock={rng.randint(100000000, 299999999)}, flags=0x1, tag=\"View Lock\", "
                   f"name=com.android.systemui, ws=null, uid={rng.choice([10008, 1000, 10110])}, pid={pid}")
        elif k < 0.45:
            msg = (f"release:lock={rng.randint(100000000, 299999999)}, flg=0x0, tag=\"RILJ_ACK_WL\", "
                   f"name=com.android.phone\", ws=null, uid=1001, pid={pid}")
        elif k < 0.6:
            msg = (f"printFreezingDisplayLogsopening app wtoken = AppWindowToken{{{rng.choice(tokens)} "
                   f"token=Token{{{rng.choice(tokens)} ActivityRecord{{{rng.choice(tokens)} u0 "
                   f"com.tencent.qt.qtl/.activity.info.NewsDetailXmlActivity t{rng.randint(700, 780)}}}}}}}, "
                   f"allDrawn= false, startingDisplayed =  false, startingMoved =  false, isRelaunching =  false")
        elif k < 0.75:
            msg = f"updateLightsLocked: mButtonBrightness={rng.choice([0, 102])}, mScreenBrightness={rng.randint(0, 255)}"
        elif k < 0.88:
            msg = f"Skipping AppWindowToken{{{rng.choice(tokens)} token=Token{{{rng.choice(tokens)}}}}} -- going to hide"
        else:
            msg = f"setLightsOn(true) visible={rng.randint(0, 1)} flags={rng.choice([0, 8, 1024])}"
        yield f"{t:%m-%d %H:%M:%S}.{t.microsecond // 1000:03d}  {pid}  {tid} {lvl} {tag}: {msg}"


def _apache(rng, n):
    clock = _Clock(rng, dt.datetime(2005, 12, 4, 4, 47, 44), 8.0)
    child = 6725
    for _ in range(n):
        t = clock.tick()
        head = f"[{t:%a %b %d %H:%M:%S %Y}]"
        k = rng.random()
        if k < 0.3:
            child += rng.randint(1, 3)
            yield f"{head} [notice] jk2_init() Found child {child} in scoreboard slot {rng.randint(6, 12)}"
        elif k < 0.55:
            yield f"{head} [notice] workerEnv.init() ok /etc/httpd/conf/workers2.properties"
        elif k < 0.78:
            yield f"{head} [error] mod_jk child workerEnv in error state {rng.choice([6, 6, 6, 7, 8])}"
        elif k < 0.9:
            yield f"{head} [error] [client {_ip(rng)}] Directory index forbidden by rule: /var/www/html/"
        else:
            yield f"{head} [error] jk2_init() Can't find child {child + rng.randint(1, 4)} in scoreboard"


def _bgl(rng, n):
    clock = _Clock(rng, dt.datetime(2005, 6, 3, 15, 42, 50), 2.0)
    nodes = [f"R{rng.randint(0, 7):02d}-M{rng.randint(0, 1)}-N{rng.choice('0123456789ABCDEF')}-C:J{rng.randint(2, 17):02d}-U{rng.choice([1, 11])}"
             for _ in range(40)]
    for _ in range(n):
        t = clock.tick()
        epoch = int(t.replace(tzinfo=dt.timezone.utc).timestamp())
        node = rng.choice(nodes)
        alert = "-" if rng.random() < 0.9 else "KERNDTLB"
        k = rng.random()
        if k < 0.45:
            msg = "RAS KERNEL INFO instruction cache parity error corrected"
        elif k < 0.65:
            msg = f"RAS KERNEL INFO {rng.randint(1, 900)} double-hummer alignment exceptions"
        elif k < 0.8:
            msg = f"RAS KERNEL INFO generating core.{rng.randint(1, 9999)}"
        elif k < 0.9:
            msg = f"RAS KERNEL FATAL data TLB error interrupt"
        else:
            msg = f"RAS APP FATAL ciod: failed to read message prefix on control stream (CioStream socket to 172.16.96.116:{rng.randint(30000, 60000)}"
        yield (f"{alert} {epoch} {t:%Y.%m.%d} {node} {t:%Y-%m-%d-%H.%M.%S}.{t.microsecond:06d} "
               f"{node} {msg}")


def _hadoop(rng, n):
    clock = _Clock(rng, dt.datetime(2015, 10, 18, 18, 1, 47), 0.4)
    app = "1445144423722_0020"
    for i in range(n):
        t = clock.tick()
        ts = f"{t:%Y-%m-%d %H:%M:%S},{t.microsecond // 1000:03d}"
        k = rng.random()
        attempt = f"attempt_{app}_m_{rng.randint(0, 12):06d}_{rng.randint(0, 1)}"
        if k < 0.3:
            yield (f"{ts} INFO [RMCommunicator Allocator] org.apache.hadoop.mapreduce.v2.app.rm.RMContainerAllocator: "
                   f"After Scheduling: PendingReds:1 ScheduledMaps:{rng.randint(0, 10)} ScheduledReds:0 AssignedMaps:{rng.randint(0, 10)} "
                   f"AssignedReds:0 CompletedMaps:{rng.randint(0, 10)} CompletedReds:0 ContAlloc:{rng.randint(10, 13)} ContRel:0 HostLocal:{rng.randint(5, 10)} RackLocal:{rng.randint(0, 3)}")
        elif k < 0.5:
            yield (f"{ts} INFO [AsyncDispatcher event handler] org.apache.hadoop.mapreduce.v2.app.job.impl.TaskAttemptImpl: "
                   f"{attempt} TaskAttempt Transitioned from RUNNING to SUCCESS_CONTAINER_CLEANUP")
        elif k < 0.7:
            yield (f"{ts} WARN [LeaseRenewer:msrabi@msra-sa-41:9000] org.apache.hadoop.ipc.Client: "
                   f"Address change detected. Old: msra-sa-41/10.190.173.170:9000 New: msra-sa-41:9000")
        elif k < 0.85:
            yield (f"{ts} INFO [IPC Server handler {rng.randint(0, 29)} on {rng.choice([62270, 60271])}] "
                   f"org.apache.hadoop.mapred.TaskAttemptListenerImpl: Progress of TaskAttempt {attempt} is : {rng.random():.8f}")
        else:
            yield (f"{ts} INFO [main] org.apache.hadoop.mapreduce.v2.app.MRAppMaster: "
                   f"Created MRAppMaster for application appattempt_{app}_{rng.randint(1, 2):06d}")


def _hdfs(rng, n):
    clock = _Clock(rng, dt.datetime(2008, 11, 9, 20, 35, 18), 0.8)
    blocks = []
    nodes = [f"10.250.{rng.randint(5, 19)}.{rng.randint(2, 250)}" for _ in range(30)]
    for _ in range(n):
        t = clock.tick()
        if not blocks or rng.random() < 0.15:
            blocks.append(rng.choice([-1, 1]) * rng.randint(10 ** 17, 9 * 10 ** 18))
            blocks = blocks[-30:]
        blk = f"blk_{rng.choice(blocks)}"
        head = f"{t:%y%m%d %H%M%S} {rng.randint(13, 3000)}"
        k = rng.random()
        src = rng.choice(nodes)
        if k < 0.3:
            yield (f"{head} INFO dfs.DataNode$DataXceiver: Receiving block {blk} src: /{src}:{rng.randint(30000, 60000)} "
                   f"dest: /{src}:50010")
        elif k < 0.55:
            yield f"{head} INFO dfs.DataNode$PacketResponder: PacketResponder {rng.randint(0, 2)} for block {blk} terminating"
        elif k < 0.8:
            yield f"{head} INFO dfs.DataNode$PacketResponder: Received block {blk} of size {rng.choice([67108864, rng.randint(1000, 99999999)])} from /{src}"
        elif k < 0.95:
            yield (f"{head} INFO dfs.FSNamesystem: BLOCK* NameSystem.addStoredBlock: blockMap updated: "
                   f"{src}:50010 is added to {blk} size {rng.choice([67108864, rng.randint(1000, 99999999)])}")
        else:
            yield (f"{head} INFO dfs.FSNamesystem: BLOCK* NameSystem.allocateBlock: "
                   f"/user/root/rand/_temporary/_task_200811092030_0001_m_{rng.randint(0, 2000):06d}_0/part-{rng.randint(0, 2000):05d}. {blk}")


def _healthapp(rng, n):
    clock = _Clock(rng, dt.datetime(2017, 12, 23, 22, 15, 29), 1.5)
    steps = 3579
    for _ in range(n):
        t = clock.tick()
        ts = f"{t:%Y%m%d-%H:%M:%S}:{t.microsecond // 1000}"
        k = rng.random()
        if k < 0.3:
            steps += rng.randint(0, 3)
            yield f"{ts}|Step_LSC|30002312|onStandStepChanged {steps}"
        elif k < 0.5:
            yield f"{ts}|Step_LSC|30002312|onExtend:{int(t.timestamp() * 1000)} {rng.randint(0, 14)} 0 4"
        elif k < 0.65:
            yield f"{ts}|Step_SPUtils|30002312| getTodayTotalDetailSteps = {int(t.timestamp() * 1000) // 1000 * 1000}##{steps * 2}##{rng.randint(500000, 600000)}##{rng.randint(8000, 9000)}##{rng.randint(25000, 30000)}##{int(t.timestamp() * 1000)}"
        elif k < 0.8:
            yield f"{ts}|Step_StandReportReceiver|30002312|onReceive action: android.intent.action.SCREEN_ON"
        elif k < 0.9:
            yield f"{ts}|Step_LSC|30002312|processHandleBroadcastAction action:android.intent.action.SCREEN_ON"
        else:
            yield f"{ts}|Step_ExtSDM|30002312|calculateCaloriesWithCache totalCalories={rng.randint(120000, 130000)}"


def _hpc(rng, n):
    idx = 134681
    epoch = 1077804742
    nodes = [f"node-{rng.randint(0, 255)}" for _ in range(30)]
    for _ in range(n):
        idx += rng.randint(1, 40)
        epoch += rng.randint(0, 60)
        node = rng.choice(nodes)
        k = rng.random()
        if k < 0.35:
            yield (f"{idx} {node} unix.hw state_change.unavailable {epoch} 1 Component State Change: "
                   f"Component \\042alt0\\042 is in the unavailable state (HWID={rng.randint(1000, 5000)})")
        elif k < 0.6:
            yield f"{idx} {node} action start {epoch} 1 clusterAddMember  (command {rng.randint(1000, 3000)})"
        elif k < 0.8:
            yield f"{idx} gige{rng.randint(1, 9)} gige link.error {epoch} 1 Link error on broadcast tree Interconnect-0T00:00:2:0"
        else:
            yield f"{idx} {node} boot_cmd new {epoch} 1 Targeting domains:{node} and nodes:{node}-[{rng.randint(0, 50)}-{rng.randint(51, 99)}] child of command {rng.randint(1000, 3000)}"


def _linux(rng, n):
    clock = _Clock(rng, dt.datetime(2005, 6, 14, 15, 16, 1), 30.0)
    pid = 19939
    for _ in range(n):
        t = clock.tick()
        head = f"{t:%b} {t.day:2d} {t:%H:%M:%S} combo"
        pid += rng.randint(0, 3)
        k = rng.random()
        if k < 0.4:
            yield (f"{head} sshd(pam_unix)[{pid}]: authentication failure; logname= uid=0 euid=0 tty=NODEVssh "
                   f"ruser= rhost={_ip(rng, '218.188.')}  user=root")
        elif k < 0.6:
            yield f"{head} sshd(pam_unix)[{pid}]: check pass; user unknown"
        elif k < 0.8:
            yield f"{head} su(pam_unix)[{pid}]: session opened for user cyrus by (uid=0)"
        elif k < 0.9:
            yield f"{head} ftpd[{pid}]: connection from {_ip(rng)} () at {t:%a %b %d %H:%M:%S %Y}"
        else:
            yield f"{head} logrotate: ALERT exited abnormally with [1]"


def _mac(rng, n):
    clock = _Clock(rng, dt.datetime(2017, 7, 1, 9, 0, 55), 20.0)
    host = "calvisitor-10-105-160-95"
    for _ in range(n):
        t = clock.tick()
        head = f"{t:%b} {t.day:2d} {t:%H:%M:%S} {host}"
        k = rng.random()
        if k < 0.3:
            yield (f"{head} kernel[0]: IOThunderboltSwitch<0>(0x0)::listenerCallback - Thunderbolt HPD packet for "
                   f"route = 0x0 port = {rng.choice([11, 12])} unplug = {rng.randint(0, 1)}")
        elif k < 0.5:
            yield f"{head} kernel[0]: AppleCamIn::systemWakeCall - messageType = 0x{rng.choice(['E0000340', 'E0000320'])}"
        elif k < 0.7:
            yield (f"{head} com.apple.CDScheduler[{rng.randint(40, 90)}]: Thermal pressure state: {rng.randint(0, 1)} "
                   f"Memory pressure state: 0")
        elif k < 0.85:
            yield (f"{head} QQ[{rng.randint(10000, 10030)}]: FA||Url||taskID[{rng.randint(2019352000, 2019355000)}] dealloc")
        else:
            yield (f"{head} WindowServer[{rng.randint(180, 190)}]: device_generate_desktop_screenshot: "
                   f"authw 0x7fa82{_hex(rng, 5)}({rng.randint(2000, 2100)}), shield 0x7fa82{_hex(rng, 5)}({rng.randint(2000, 2100)})")


def _openssh(rng, n):
    clock = _Clock(rng, dt.datetime(2017, 12, 10, 6, 55, 46), 3.0)
    pid = 24200
    for _ in range(n):
        t = clock.tick()
        pid += rng.randint(0, 2)
        head = f"{t:%b} {t.day} {t:%H:%M:%S} LabSZ sshd[{pid}]:"
        ip = rng.choice(["173.234.31.186", "112.95.230.3", "183.62.140.253", "187.141.143.180", _ip(rng)])
        k = rng.random()
        if k < 0.25:
            yield f"{head} Failed password for root from {ip} port {rng.randint(30000, 60000)} ssh2"
        elif k < 0.45:
            yield f"{head} pam_unix(sshd:auth): authentication failure; logname= uid=0 euid=0 tty=ssh ruser= rhost={ip}  user=root"
        elif k < 0.6:
            yield f"{head} Received disconnect from {ip}: 11: Bye Bye [preauth]"
        elif k < 0.75:
            yield f"{head} Invalid user {rng.choice(['webmaster', 'test', 'admin', 'oracle'])} from {ip}"
        elif k < 0.9:
            yield f"{head} reverse mapping checking getaddrinfo for ns.marryaldkfaczcz.com [{ip}] failed - POSSIBLE BREAK-IN ATTEMPT!"
        else:
            yield f"{head} Connection closed by {ip} [preauth]"


def _openstack(rng, n):
    clock = _Clock(rng, dt.datetime(2017, 5, 16, 0, 0, 0), 0.3)
    tenant = "54fadb412c4e40cdbaed9335e4c35a9e"
    user = "113d3a99c3da401fbd62cc2caa5b96d2"
    inst = [f"{_hex(rng, 8)}-{_hex(rng, 4)}-{_hex(rng, 4)}-{_hex(rng, 4)}-{_hex(rng, 12)}" for _ in range(6)]
    for _ in range(n):
        t = clock.tick()
        ts = f"{t:%Y-%m-%d %H:%M:%S}.{t.microsecond // 1000:03d}"
        req = f"req-{_hex(rng, 8)}-{_hex(rng, 4)}-{_hex(rng, 4)}-{_hex(rng, 4)}-{_hex(rng, 12)}"
        k = rng.random()
        if k < 0.55:
            yield (f"nova-api.log.1.2017-05-16_13:53:08 {ts} 25746 INFO nova.osapi_compute.wsgi.server [{req} {user} {tenant} - - -] "
                   f"10.11.10.1 \"GET /v2/{tenant}/servers/detail HTTP/1.1\" status: 200 len: {rng.randint(1500, 2000)} time: {rng.uniform(0.1, 0.4):.7f}")
        elif k < 0.8:
            yield (f"nova-compute.log.1.2017-05-16_13:55:31 {ts} 2931 INFO nova.compute.manager [{req} - - - - -] "
                   f"[instance: {rng.choice(inst)}] VM {rng.choice(['Started', 'Paused', 'Resumed', 'Stopped'])} (Lifecycle Event)")
        else:
            yield (f"nova-compute.log.1.2017-05-16_13:55:31 {ts} 2931 INFO nova.virt.libvirt.imagecache [{req} - - - - -] "
                   f"image {rng.choice(inst)} at (/var/lib/nova/instances/_base/{_hex(rng, 40)}): checking")


def _proxifier(rng, n):
    clock = _Clock(rng, dt.datetime(2016, 10, 30, 16, 49, 6), 1.0)
    procs = ["chrome.exe", "Skype.exe", "QQ.exe", "WeChat.exe", "YodaoDict.exe"]
    hosts = ["proxy.cse.cuhk.edu.hk:5070", "get.sogou.com:80", "183.62.156.108:22", "www.google.com.hk:443",
             "qa.sockets.stackexchange.com:443"]
    for _ in range(n):
        t = clock.tick()
        head = f"[{t.month}.{t.day} {t:%H:%M:%S}] {rng.choice(procs)} - {rng.choice(hosts)}"
        k = rng.random()
        if k < 0.45:
            yield f"{head} open through proxy proxy.cse.cuhk.edu.hk:5070 HTTPS"
        elif k < 0.9:
            life = "<1 sec" if rng.random() < 0.3 else f"{rng.randint(0, 59):02d}:{rng.randint(0, 59):02d}"
            yield f"{head} close, {rng.randint(0, 9999)} bytes ({rng.uniform(0, 9):.2f} KB) sent, {rng.randint(0, 99999)} bytes received, lifetime {life}"
        else:
            yield f"{head} error : Could not connect through proxy proxy.cse.cuhk.edu.hk:5070 - Proxy server cannot establish a connection with the target, status code {rng.choice([403, 502])}"


def _spark(rng, n):
    clock = _Clock(rng, dt.datetime(2017, 6, 9, 20, 10, 40), 0.2)
    for _ in range(n):
        t = clock.tick()
        head = f"{t:%y/%m/%d %H:%M:%S}"
        k = rng.random()
        if k < 0.3:
            yield f"{head} INFO storage.BlockManager: Found block rdd_{rng.randint(2, 40)}_{rng.randint(0, 40)} locally"
        elif k < 0.5:
            yield f"{head} INFO executor.Executor: Finished task {rng.randint(0, 40)}.0 in stage {rng.randint(0, 40)}.0 (TID {rng.randint(0, 2000)}). {rng.randint(2000, 3000)} bytes result sent to driver"
        elif k < 0.7:
            yield f"{head} INFO executor.CoarseGrainedExecutorBackend: Got assigned task {rng.randint(0, 2000)}"
        elif k < 0.85:
            yield f"{head} INFO storage.MemoryStore: Block broadcast_{rng.randint(0, 40)}_piece0 stored as bytes in memory (estimated size {rng.uniform(1, 30):.1f} KB, free {rng.uniform(1, 30):.1f} GB)"
        else:
            yield f"{head} INFO python.PythonRunner: Times: total = {rng.randint(30, 90)}, boot = {rng.randint(-20, 20)}, init = {rng.randint(20, 90)}, finish = {rng.randint(0, 5)}"


def _thunderbird(rng, n):
    clock = _Clock(rng, dt.datetime(2005, 11, 9, 12, 1, 1), 5.0)
    nodes = [f"{rng.choice(['dn', 'bn', 'an', 'cn'])}{rng.randint(1, 999)}" for _ in range(30)]
    pid = 2915
    for _ in range(n):
        t = clock.tick()
        epoch = int(t.replace(tzinfo=dt.timezone.utc).timestamp())
        node = rng.choice(nodes)
        pid += rng.randint(0, 5)
        head = f"- {epoch} {t:%Y.%m.%d} {node} {t:%b} {t.day} {t:%H:%M:%S} {node}/{node}"
        k = rng.random()
        if k < 0.4:
            yield f"{head} crond(pam_unix)[{pid}]: session closed for user root"
        elif k < 0.7:
            yield f"{head} crond(pam_unix)[{pid}]: session opened for user root by (uid=0)"
        elif k < 0.85:
            yield f"{head} crond[{pid}]: (root) CMD (run-parts /etc/cron.hourly)"
        else:
            yield f"{head} ntpd[{rng.randint(2000, 3000)}]: synchronized to {_ip(rng, '10.100.')}, stratum {rng.randint(1, 3)}"


def _windows(rng, n):
    clock = _Clock(rng, dt.datetime(2016, 9, 28, 4, 30, 30), 0.5)
    sessions = [f"{rng.randint(30546173, 30546999)}_{rng.randint(1000000000, 4000000000)}" for _ in range(5)]
    for _ in range(n):
        t = clock.tick()
        head = f"{t:%Y-%m-%d %H:%M:%S}, Info                  CBS   "
        k = rng.random()
        if k < 0.35:
            yield f"{head} SQM: Initializing online with Windows opt-in: False"
        elif k < 0.6:
            yield f"{head} Session: {rng.choice(sessions)} initialized by client WindowsUpdateAgent."
        elif k < 0.8:
            yield (f"{head} Loaded Servicing Stack v6.1.7601.23505 with Core: C:\\Windows\\winsxs\\amd64_microsoft-windows-servicingstack_"
                   f"31bf3856ad364e35_6.1.7601.23505_none_681aa442f6fed7f0\\cbscore.dll")
        else:
            yield f"{head} Read out cached package applicability for package: Package_for_KB{rng.randint(2500000, 3200000)}~31bf3856ad364e35~amd64~~6.1.{rng.randint(1, 4)}.{rng.randint(0, 9)}, ApplicableState: 112, CurrentState:112"


def _zookeeper(rng, n):
    clock = _Clock(rng, dt.datetime(2015, 7, 29, 17, 41, 44), 3.0)
    for _ in range(n):
        t = clock.tick()
        ts = f"{t:%Y-%m-%d %H:%M:%S},{t.microsecond // 1000:03d}"
        k = rng.random()
        if k < 0.3:
            yield f"{ts} - INFO  [QuorumPeer[myid=1]/0:0:0:0:0:0:0:0:2181:FastLeaderElection@774] - Notification time out: {rng.choice([3200, 6400, 12800, 25600, 51200, 60000])}"
        elif k < 0.55:
            yield (f"{ts} - INFO  [NIOServerCxn.Factory:0.0.0.0/0.0.0.0:2181:NIOServerCnxnFactory@197] - "
                   f"Accepted socket connection from /10.10.34.{rng.randint(11, 40)}:{rng.randint(30000, 60000)}")
        elif k < 0.8:
            yield (f"{ts} - WARN  [SendWorker:188978561024:QuorumCnxManager$SendWorker@679] - Interrupted while waiting for message on queue")
        else:
            yield (f"{ts} - INFO  [NIOServerCxn.Factory:0.0.0.0/0.0.0.0:2181:NIOServerCnxn@1001] - Closed socket connection for client "
                   f"/10.10.34.{rng.randint(11, 40)}:{rng.randint(30000, 60000)} which had sessionid 0x{rng.randint(1, 3)}4ed93119420{_hex(rng, 3)}")


GENERATORS: dict[str, Callable[[random.Random, int], Iterator[str]]] = {
    "Android": _android, "Apache": _apache, "BGL": _bgl, "Hadoop": _hadoop, "HDFS": _hdfs,
    "HealthApp": _healthapp, "HPC": _hpc, "Linux": _linux, "Mac": _mac, "OpenSSH": _openssh,
    "OpenStack": _openstack, "Proxifier": _proxifier, "Spark": _spark, "Thunderbird": _thunderbird,
    "Windows": _windows, "Zookeeper": _zookeeper,
}


def generate(system: str, lines: int = SAMPLE_LINES, seed: int = 0) -> bytes:
    """Deterministic synthetic log for ``system``, newline-terminated."""
    try:
        gen = GENERATORS[system]
    except KeyError:
        raise ValueError(f"unknown system {system!r}; choose from {', '.join(SYSTEMS)}") from None
    rng = random.Random(f"{system}:{seed}")
    return "".join(line + "\n" for line in gen(rng, lines)).encode()


def incremental_log(lines: int, seed: int = 0) -> bytes:
    """A large log dominated by incrementing timestamps and counters."""
    rng = random.Random(seed)
    t = 0
    req = 500000
    seq = 10000000
    out = []
    for i in range(lines):
        t += rng.choice((0, 0, 0, 1))
        seq += 1
        hh, mm, ss = (t // 3600) % 24, (t // 60) % 60, t % 60
        k = i % 4
        if k == 0:
            req += 1
            out.append(f"2024-01-15 {hh:02d}:{mm:02d}:{ss:02d} INFO worker-{rng.randint(1, 8)} accepted request {req} seq {seq}\n")
        elif k == 1:
            out.append(f"2024-01-15 {hh:02d}:{mm:02d}:{ss:02d} DEBUG worker-{rng.randint(1, 8)} request {req} read {rng.randint(100, 999)} bytes seq {seq}\n")
        elif k == 2:
            out.append(f"2024-01-15 {hh:02d}:{mm:02d}:{ss:02d} INFO request {req} from 10.0.{rng.randint(0, 3)}.{rng.randint(1, 254)} done seq {seq}\n")
        else:
            out.append(f"2024-01-15 {hh:02d}:{mm:02d}:{ss:02d} INFO checkpoint {seq // 4} committed seq {seq}\n")
    return "".join(out).encode()


def synthetic_bulk(target_bytes: int, seed: int = 0) -> bytes:
    """Roughly ``target_bytes`` of mixed-system log text, whole lines only."""
    parts = []
    size = 0
    i = 0
    while size < target_bytes:
        system = SYSTEMS[i % len(SYSTEMS)]
        block = generate(system, 20000, seed=seed + i)
        parts.append(block)
        size += len(block)
        i += 1
    return b"".join(parts)


def load_samples(directory: str | os.PathLike | None = None,
                 systems=SYSTEMS) -> dict[str, bytes]:
    """
    ``<System>_2k.log`` files from ``directory`` (or $LOGHUB_2K_DIR) when
    present, synthetic stand-ins otherwise.
    """
    directory = directory or os.environ.get("LOGHUB_2K_DIR")
    out = {}
    for s in systems:
        path = Path(directory) / f"{s}_2k.log" if directory else None
        if path is not None and path.is_file():
            out[s] = path.read_bytes()
        else:
            out[s] = generate(s)
    return out
