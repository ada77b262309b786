import os
import json
import logging
from logging.handlers import RotatingFileHandler
from datetime import datetime
import time


class Logger:
    """애플리케이션 로깅 관리 클래스"""

    def __init__(self, log_level=None, log_dir="logs"):
        """
        Logger 초기화

        Args:
            log_level (str, optional): 로그 레벨. 기본값은 INFO
            log_dir (str, optional): 로그 디렉토리. 기본값은 logs
        """
        self.log_dir = log_dir

        # 서브 디렉토리 확인
        for subdir in ["evaluations", "crosschecks"]:
            os.makedirs(os.path.join(self.log_dir, subdir), exist_ok=True)

        log_level = (log_level or "INFO").upper()

        # 로그 레벨 매핑
        level_map = {
            "DEBUG": logging.DEBUG,
            "INFO": logging.INFO,
            "WARNING": logging.WARNING,
            "ERROR": logging.ERROR,
            "CRITICAL": logging.CRITICAL
        }
        level = level_map.get(log_level, logging.INFO)

        # 콘솔 핸들러는 stderr로 출력 (stdout은 JSON 결과 전용)
        console_handler = logging.StreamHandler()

        info_handler = RotatingFileHandler(
            os.path.join(self.log_dir, "vertexlab.log"),
            maxBytes=10*1024*1024,  # 10MB
            backupCount=5
        )
        info_handler.setLevel(level)

        error_handler = RotatingFileHandler(
            os.path.join(self.log_dir, "error.log"),
            maxBytes=10*1024*1024,  # 10MB
            backupCount=5
        )
        error_handler.setLevel(logging.ERROR)

        logging.basicConfig(
            level=level,
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            handlers=[
                console_handler,
                info_handler,
                error_handler
            ],
            force=True
        )

        self.logger = logging.getLogger("vertexlab")
        self.logger.debug("로거 초기화 완료")

    def _append_record(self, subdir, kind, record):
        """날짜별 JSON lines 파일에 레코드 한 줄 추가"""
        date_str = datetime.now().strftime("%Y-%m-%d")
        file_path = os.path.join(self.log_dir, subdir, f"{date_str}_{kind}_log.json")

        log_entry = {
            "timestamp": datetime.now().isoformat(),
            "unix_timestamp": int(time.time()),
        }
        log_entry.update(record)

        try:
            with open(file_path, 'a', encoding='utf-8') as f:
                f.write(json.dumps(log_entry, ensure_ascii=False) + '\n')

            self.logger.debug(f"{kind} 로깅 완료: {file_path}")
            return True

        except Exception as e:
            self.logger.error(f"{kind} 로깅 실패: {e}")
            return False

    def log_evaluation(self, record):
        """
        평가 결과 로깅

        Args:
            record (dict): CLI가 출력한 결과 문서 (value, method, wires, layers, runtime_ms ...)

        Returns:
            bool: 성공 여부
        """
        return self._append_record("evaluations", "evaluation", record)

    def log_crosscheck(self, report):
        """
        교차 검증 보고서 로깅

        Args:
            report (dict): crosscheck 요약

        Returns:
            bool: 성공 여부
        """
        if not report.get("passed", True):
            self.logger.warning(
                f"교차 검증 불일치: methods={report.get('methods')}, max_rel_dev={report.get('max_rel_deviation')}"
            )
        return self._append_record("crosschecks", "crosscheck", report)
